#include "fnx/core/real.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace fnx {

namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

unsigned default_precision_bits() {
  static const unsigned bits = [] {
    if (const char* env = std::getenv("FNX_PRECISION")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 24 && v <= 65536) return static_cast<unsigned>(v);
    }
    return kDefaultPrecisionBits;
  }();
  return bits;
}

PrecisionGuard::PrecisionGuard(unsigned bits)
    : previous_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(previous_digits10_); }

Real to_real(const Rational& q) {
  Real out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

Real at_precision(const Real& x) { return Real(x, Real::default_precision()); }

RealVector at_precision(const RealVector& v) {
  RealVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(at_precision(x));
  return out;
}

Real real_pow(const Real& base, const Rational& exponent) {
  if (is_integer(exponent) && exponent.get_num().fits_slong_p()) {
    return boost::multiprecision::pow(base, static_cast<long>(exponent.get_num().get_si()));
  }
  return boost::multiprecision::exp(to_real(exponent) * boost::multiprecision::log(base));
}

double to_double(const Real& x) { return x.convert_to<double>(); }

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace fnx

#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

#include "fnx/core/rational.hpp"

namespace fnx {

using Real = boost::multiprecision::mpfr_float;
using RealVector = std::vector<Real>;

inline constexpr unsigned kDefaultPrecisionBits = 128;

// Mantissa bits used when no precision is passed explicitly. Reads the
// FNX_PRECISION environment variable once; falls back to 128.
unsigned default_precision_bits();

// Sets the working precision of newly created Real values for the lifetime
// of the guard and restores the previous precision afterwards.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned previous_digits10_;
};

Real to_real(const Rational& q);
// Copy of x carried at the current default precision (copies otherwise keep
// the precision of their source).
Real at_precision(const Real& x);
RealVector at_precision(const RealVector& v);
Real real_pow(const Real& base, const Rational& exponent);
double to_double(const Real& x);
std::string format_real(const Real& x, int digits = 17);

}  // namespace fnx

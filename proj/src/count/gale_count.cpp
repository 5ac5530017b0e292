#include "fnx/count/gale_count.hpp"

#include "fnx/core/errors.hpp"

namespace fnx {

CountReport count_gale_in_delta(const GaleSystem& g, std::uint64_t seed) {
  CountReport rep;
  if (g.k() == 1) {
    rep = count_in_region_1d(g.polynomial_equation(0), g.delta);
  } else if (g.k() == 2) {
    rep = count_in_region_2d(g.polynomial_equation(0), g.polynomial_equation(1), g.delta, seed);
  } else {
    throw SizeError("exact Gale counting covers k <= 2");
  }
  PrecisionGuard guard(default_precision_bits());
  for (auto& s : rep.solutions) {
    Real m = 0;
    for (const auto& r : g.log_residuals(s.point)) m = std::max(m, Real(boost::multiprecision::abs(r)));
    s.residual = m;
  }
  return rep;
}

}  // namespace fnx

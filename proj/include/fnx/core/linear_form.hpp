#pragma once

#include "fnx/core/rational.hpp"
#include "fnx/core/real.hpp"

namespace fnx {

// p(y) = c0 + sum_l c[l] y_l
struct LinearForm {
  Rational c0;
  RatVector c;

  Rational eval(const RatVector& y) const {
    Rational v = c0;
    for (std::size_t l = 0; l < c.size(); ++l) v += c[l] * y[l];
    return v;
  }
  Real eval(const RealVector& y) const {
    Real v = to_real(c0);
    for (std::size_t l = 0; l < c.size(); ++l) v += to_real(c[l]) * y[l];
    return v;
  }
  bool homogeneous() const { return c0 == 0; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// The coordinate form y_index > 0 in dimension dim.
inline LinearForm coordinate_form(std::size_t dim, std::size_t index) {
  LinearForm f{0, RatVector(dim, 0)};
  f.c[index] = 1;
  return f;
}

}  // namespace fnx

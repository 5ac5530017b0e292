#pragma once

#include <vector>

#include "fnx/core/sparse_poly.hpp"
#include "fnx/core/upoly.hpp"

namespace fnx {

// Polynomial in (u, y) stored as coefficients in y over Q[u]:
// p = sum_j coeffs[j](u) y^j, trimmed so the last entry is nonzero.
struct BiPoly {
  std::vector<UPoly> coeffs;

  int deg_y() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const UPoly& lc_y() const { return coeffs.back(); }
  void trim();
  // p(a, y) as a polynomial in y.
  UPoly at_u(const Rational& a) const;
};

// f(u - t y, y) for f in Q[x, y] (nonnegative exponents, 2 variables).
BiPoly shear(const SparsePoly& f, const Rational& t);

// Determinant over Q[u] by fraction-free (Bareiss) elimination.
UPoly poly_determinant(std::vector<std::vector<UPoly>> m);

// Res_y(f, g); requires deg_y f, deg_y g >= 1.
UPoly resultant_y(const BiPoly& f, const BiPoly& g);

// First subresultant s11(u) y + s10(u) of f and g (deg_y >= 1 each).
struct FirstSubresultant {
  UPoly s11;
  UPoly s10;
};
FirstSubresultant first_subresultant(const BiPoly& f, const BiPoly& g);

}  // namespace fnx

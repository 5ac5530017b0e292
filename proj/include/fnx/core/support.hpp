#pragma once

#include <cstddef>
#include <vector>

#include "fnx/core/matrix.hpp"
#include "fnx/core/rational.hpp"
#include "fnx/core/real.hpp"
#include "fnx/core/sparse_poly.hpp"

namespace fnx {

// Ordered exponent set W in Q^n; |W| = n + k + 1.
struct Support {
  int n = 0;
  std::vector<RatVector> points;

  std::size_t size() const { return points.size(); }
  int k() const { return static_cast<int>(points.size()) - n - 1; }
  bool contains_origin() const;
  bool integer_exponents() const;
  // n x (n+k) matrix whose columns are w_1..w_{n+k} (point 0 skipped).
  Matrix exponent_matrix() const;
};

// n polynomials on a shared support; coeffs is n x |W|, column j belongs to
// support point j.
struct FewnomialSystem {
  int n = 0;
  Support support;
  Matrix coeffs;

  // Row i as a polynomial (exponents cleared to integers by their lcm).
  SparsePoly polynomial(std::size_t i) const;
};

struct NormalizedSystem {
  Support support;
  FewnomialSystem system;
  // permutation[new_index] = index of that point in the raw support
  std::vector<std::size_t> permutation;
  // every raw point was translated by -shift
  RatVector shift;
};

// Moves the origin to position 0 (translating by -w_0 if W has no origin)
// and reorders so the last n exponent vectors are independent. The
// independent set is chosen greedily scanning from the last point; chosen
// points go last and every group keeps its original relative order.
NormalizedSystem normalize_support(const Support& raw, const FewnomialSystem& system);
NormalizedSystem normalize_support(const FewnomialSystem& system);

// n! vol(conv W), exact.
Rational kouchnirenko_bound(const Support& w);

// Residuals f_i(z) with z^w = exp(w . log z), evaluated at `precision_bits`.
RealVector eval_system(const FewnomialSystem& sys, const RealVector& z, unsigned precision_bits);

// Affine dimension of a point set (-1 when empty).
int affine_dimension(const std::vector<RatVector>& pts);

}  // namespace fnx

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fnx/core/json_io.hpp"
#include "fnx/core/linear_form.hpp"
#include "fnx/core/matrix.hpp"
#include "fnx/core/rng.hpp"
#include "fnx/core/sparse_poly.hpp"
#include "fnx/core/support.hpp"

namespace fnx {

// z^{w_i} = p_i(y), y_j = z^{w_{n+j}}, for i = 1..n.
struct DiagonalForm {
  int n = 0;
  int k = 0;
  std::vector<LinearForm> p;
  // ordering[new_index] = raw support index (from normalize_support)
  std::vector<std::size_t> ordering;
  bool perturbed = false;
};

struct GaleDual {
  Matrix A;  // (n+k) x k, columns span the relations among w_1..w_{n+k}
  Matrix B;  // (n+k) x (k+1), row i is (b_i0, b_i1, .., b_ik)
  std::vector<std::size_t> perm;
  long N = 0;  // nonzero rows of A
  long nW = 0;
  std::vector<std::size_t> zero_rows;

  int n() const { return static_cast<int>(A.rows()) - k(); }
  int k() const { return static_cast<int>(A.cols()); }
  LinearForm form(std::size_t i) const;
  std::vector<LinearForm> forms() const;
};

enum class ZeroRowPolicy { Drop, Error };

// 1 = prod_i p_i(y)^{a_ij}, j = 1..k, on delta = {p_i > 0}.
struct GaleSystem {
  GaleDual dual;
  std::vector<LinearForm> delta;

  int k() const { return dual.k(); }
  bool in_delta(const RealVector& y) const;
  // sum_i a_ij log p_i(y); zero exactly at Gale solutions
  RealVector log_residuals(const RealVector& y) const;
  // Equation j with exponents scaled to integers and split by sign:
  // prod_{a>0} p_i^a - prod_{a<0} p_i^{-a}.
  SparsePoly polynomial_equation(std::size_t j) const;
};

// Canonical (reduced column echelon) basis of the relations among
// w_1..w_{n+k} of a normalized support. SpanError if rank < n.
Matrix gale_exponents(const Support& w);

// Exact elimination on a normalized system. SingularError when the block of
// z^{w_1..w_n} is singular.
DiagonalForm diagonalize(const FewnomialSystem& normalized);

struct Diagonalization {
  NormalizedSystem normalized;
  DiagonalForm diagonal;
  bool perturbed = false;
  std::string notes;
};
inline const Rational kDiagonalPerturbation(Integer(1), Integer(1000000));
// normalize_support, then diagonalize; a singular block is perturbed with
// seeded rationals of relative size `rel` (retried until invertible).
Diagonalization diagonalize_system(const FewnomialSystem& sys, std::uint64_t seed = 0,
                                   const Rational& rel = kDiagonalPerturbation);

GaleSystem build_gale_system(const DiagonalForm& d, const Matrix& a, ZeroRowPolicy policy = ZeroRowPolicy::Drop);
// Gale system of the normalized system with the canonical basis.
GaleSystem gale_system_of(const Diagonalization& d);

// y_j = z^{w_{n+j}} on a normalized support. DomainError unless z > 0.
RealVector phi_V(const RealVector& z, const Support& w);
// All monomial values are known from y; solve the log-linear system on the
// last n (independent) exponents and check the remaining ones.
RealVector invert_phi(const RealVector& y, const DiagonalForm& d, const Support& w, unsigned precision_bits);

struct BijectionReport {
  long source_count = 0;
  long gale_count = 0;
  bool exact = false;
  bool counts_equal = false;
  bool perturbed = false;
  // max |log f_j(phi_V(z))| over the source solutions
  Real max_residual = 0;
  bool injective = true;
  bool matched = true;  // every phi_V image is one of the Gale solutions
  long nW = 0;
  std::string notes;

  bool ok() const { return counts_equal && injective && matched && max_residual < Real("1e-10"); }
};
BijectionReport verify_bijection(const FewnomialSystem& sys, std::uint64_t seed = 0);

// Random k x k rational matrix with nonzero determinant; entries p/q with
// |p| <= num_bound, q <= den_bound.
Matrix random_invertible(std::size_t k, Rng& rng, long num_bound = 2, long den_bound = 2);

Json gale_dual_to_json(const GaleDual& g);
GaleDual gale_dual_from_json(const Json& j);

}  // namespace fnx

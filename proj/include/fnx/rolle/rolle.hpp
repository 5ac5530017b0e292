#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fnx/core/json_io.hpp"
#include "fnx/core/linear_form.hpp"
#include "fnx/core/matrix.hpp"
#include "fnx/core/real.hpp"
#include "fnx/core/sparse_poly.hpp"
#include "fnx/gale/gale.hpp"
#include "fnx/polytope/polytope.hpp"

namespace fnx {

// psi_j(y) = sum_i a_ij log p_i(y), with p_i read from the rows of B.
struct LogSystem {
  Matrix A;  // (n+k) x k
  Matrix B;  // (n+k) x (k+1)

  static LogSystem from_gale(const GaleSystem& g);
  int k() const { return static_cast<int>(A.cols()); }
  int n() const { return static_cast<int>(A.rows()) - k(); }
  std::size_t size() const { return A.rows(); }
  LinearForm form(std::size_t i) const;
  std::vector<LinearForm> forms() const;
};

struct PsiValues {
  RealVector psi;
  std::vector<RealVector> gradient;  // gradient[j][l] = d psi_j / d y_l
};
// DomainError unless every p_i(y) > 0.
PsiValues psi_eval(const LogSystem& l, const RealVector& y);

// sum over k-subsets I of A_I B_I / p_I
Real gamma_k_closed_form(const LogSystem& l, const RealVector& y);

struct CauchyBinetReport {
  Rational lhs;  // det(sum_i c_i d_ij e_il)
  Rational rhs;  // sum_I c_I D_I E_I
  bool equal = false;
};
CauchyBinetReport cauchy_binet_check(const RatVector& c, const Matrix& d, const Matrix& e);

// F[j-1] = Gamma_j * (prod_i p_i)^{2^{k-j}}, a polynomial in y.
struct GammaTower {
  int n = 0;
  int k = 0;
  std::vector<SparsePoly> F;
  std::vector<int> degree;         // total degree of F_j
  std::vector<int> min_degree;     // smallest monomial degree of F_j
  std::vector<long> denominator_power;  // 2^{k-j}
  bool generic_degrees = true;     // deg F_{k-j} == 2^j n for all j
  bool perturbed = false;
  Matrix A;                        // exponents actually used
  std::string notes;

  // Gamma_j(y) from F_j
  Real gamma(int j, const LogSystem& l, const RealVector& y) const;
};
inline constexpr int kTowerMaxK = 3;
inline constexpr int kTowerMaxN = 4;
// SizeError beyond k <= 3, n <= 4. A vanishing F_j raises SingularError
// unless perturb is set, in which case A is perturbed by seeded rationals
// of relative size 1e-7 and the tower recomputed.
GammaTower gamma_tower(const LogSystem& l, bool perturb = true, std::uint64_t seed = 0);

struct ChainReport {
  long n = 0;
  long k = 0;
  bool section4 = false;
  std::vector<long> faces_used;      // face count paired with flat(C_j), j = 1..k
  std::vector<Integer> flat_bounds;  // j = 1..k
  Integer vertex_bound;              // |V(Gamma_1..Gamma_k)|
  Integer total;                     // bound on |V(psi_1..psi_k)|
  std::optional<Integer> kappa;      // floor(total / 2) in the cone case
  std::string notes;
};
// Rolle chain with the actual face counts of the closure of delta. The cone
// case (section4) uses the linear / nonlinear split with p_{phi1_index} as
// the affine facet and the slab count n^k - (n-1)^k.
ChainReport kr_chain_bound(const LogSystem& l, const FaceLattice& faces, long n, long k, bool section4 = false,
                           std::size_t phi1_index = 0);

struct RolleCertificate {
  ChainReport chain;
  std::optional<GammaTower> tower;
  FaceLattice faces;
  bool faces_perturbed = false;
  Integer generic_bound;         // formula bound for the same (n, k)
  bool chain_within_generic = true;
  bool degrees_ok = true;        // deg F_j (and the cone sparsity) as expected
  Real closed_form_error = 0;    // max relative gap, Gamma_k closed form vs det grad psi
  long sample_points = 0;
  std::string notes;
};
RolleCertificate rolle_certificate(const LogSystem& l, bool section4 = false, std::size_t phi1_index = 0,
                                   std::uint64_t seed = 0);
Json rolle_certificate_to_json(const RolleCertificate& c);

}  // namespace fnx

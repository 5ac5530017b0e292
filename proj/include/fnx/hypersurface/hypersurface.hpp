#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fnx/bounds/bounds.hpp"
#include "fnx/core/json_io.hpp"
#include "fnx/core/rng.hpp"
#include "fnx/core/sparse_poly.hpp"
#include "fnx/core/support.hpp"
#include "fnx/gale/gale.hpp"
#include "fnx/polytope/polytope.hpp"
#include "fnx/rolle/rolle.hpp"

namespace fnx {

// f = sum_i e_i z_i + sum_j c_j z^{a_j} + e0 with e_i = +-1 and c_j != 0.
struct HypersurfaceInput {
  int n = 0;
  RatVector e;                // n signs
  Rational e0;                // nonzero constant term
  std::vector<RatVector> a;   // k exponent vectors
  RatVector c;                // k coefficients

  int k() const { return static_cast<int>(a.size()); }
  // ordered as {0, a_1..a_k, e_1..e_n}
  Support support() const;
  SparsePoly polynomial() const;
};

// FormError unless the fields describe a valid normal form with k >= 1.
void validate(const HypersurfaceInput& h);

struct NormalForm {
  HypersurfaceInput input;
  RatVector scale;  // original z_i = scale_i * new z_i
};
// Rescales the variables so that the coordinate monomials get coefficients
// +-1. FormError when a coordinate monomial or the constant is missing, or a
// rescaled coefficient would be irrational.
NormalForm normal_form(const SparsePoly& f);

// f = z_2 df/dz_2 = .. = z_n df/dz_n = 0, on the support of f.
FewnomialSystem critical_system(const HypersurfaceInput& h);

// z_i = p_i(y), y_j = z^{a_j}: equations y_j^{-1} prod_i p_i^{a_ij} = 1 on the
// cone delta where p_2..p_n and the coordinates carry no constant term.
GaleSystem component_gale_system(const HypersurfaceInput& h);

struct KappaCertificate {
  long n = 0;
  long k = 0;
  std::optional<ChainReport> chain;
  std::optional<FaceLattice> faces;
  bool empty_delta = false;
  Integer instance_bound;           // on kappa(f)
  std::vector<BoundValue> generic;  // formula caps for (n, k)
  Integer best_generic;
  std::string notes;
};
// SizeError for k > 3.
KappaCertificate kappa_certificate(const HypersurfaceInput& h, std::uint64_t seed = 0);

struct ComponentReport {
  long kappa_estimate = 0;
  long critical_count = 0;
  bool critical_exact = false;
  std::vector<std::pair<long, long>> grid_history;  // (resolution, compact components)
  long resolution = 0;
  int box_exponent = 3;
  std::vector<std::pair<std::string, Integer>> caps;
  bool certified = false;  // the grid estimate never is
  std::string notes;
};
inline constexpr long kDefaultGridResolution = 128;
inline constexpr int kDefaultBoxExponent = 3;
// Compact components of V(f) in the open quadrant from a sign grid in log
// coordinates over [10^-b, 10^b]^2, accepted once three successive dyadic
// refinements agree. SmoothnessError if a critical point of z_1 on V(f) is
// singular; ResolutionError if refinements keep disagreeing.
ComponentReport count_compact_components_2d(const HypersurfaceInput& h, long resolution = kDefaultGridResolution,
                                            int box_exponent = kDefaultBoxExponent, std::uint64_t seed = 0);
// Grid count only, for any two-variable polynomial (no critical checks).
long grid_compact_components(const SparsePoly& f, long resolution, int box_exponent);

HypersurfaceInput random_hypersurface(int n, int k, Rng& rng, long max_exp = 3);

HypersurfaceInput hypersurface_from_json(const Json& j);
Json hypersurface_to_json(const HypersurfaceInput& h);
Json kappa_certificate_to_json(const KappaCertificate& c);
Json component_report_to_json(const ComponentReport& r);

}  // namespace fnx

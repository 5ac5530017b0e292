#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fnx/core/json_io.hpp"
#include "fnx/core/linear_form.hpp"
#include "fnx/core/matrix.hpp"
#include "fnx/core/rng.hpp"

namespace fnx {

// {y in R^k : p_i(y) > 0 for all i}
struct HPolyhedron {
  int k = 0;
  std::vector<LinearForm> forms;
  std::vector<bool> linear_mask;  // b_i0 == 0
  RatVector interior;             // exact witness of nonemptiness
};

// Rows of b are (b_i0, b_i1, .., b_ik). EmptyError when the open set is empty.
HPolyhedron build_delta(const Matrix& b);
HPolyhedron build_delta(int k, const std::vector<LinearForm>& forms);
// Drops forms that are positive multiples of an earlier one (same facet); order kept.
std::vector<LinearForm> distinct_forms(const std::vector<LinearForm>& forms);
// Fourier-Motzkin on strict inequalities; a rational interior point or
// nothing when empty.
std::optional<RatVector> interior_point(int k, const std::vector<LinearForm>& forms);

struct Face {
  int dim = 0;
  // indices of tight forms; forms.size() stands for the clipping facet
  std::vector<std::size_t> tight;
  std::vector<std::size_t> vertices;  // into FaceLattice::vertex_points
  RatVector witness;                  // centroid of the vertices
  bool at_infinity = false;
};

struct FaceLattice {
  int k = 0;
  std::size_t form_count = 0;
  bool bounded = true;
  std::optional<LinearForm> clip;  // r - v.y >= 0 when unbounded
  std::vector<RatVector> vertex_points;
  std::vector<std::vector<Face>> faces;  // faces[d] = faces of dimension d < k
  std::vector<long> phi;                 // phi[d] = number of d-faces

  std::size_t clip_index() const { return form_count; }
  // facets (as form indices, clip included) on which the face lies
  std::vector<std::size_t> facets_of(const Face& f) const;
};

// Faces of the projective closure, realized by clipping an unbounded
// polyhedron with v.y <= r where v is the sum of the form normals and r
// exceeds v on every vertex. DimensionError for k > 3; DegeneracyError when
// the polyhedron is not simple (the origin of a cone is exempt).
FaceLattice enumerate_faces(const HPolyhedron& p);

struct SplitCounts {
  std::vector<long> linear;     // affine span through the origin
  std::vector<long> nonlinear;  // on the facet at infinity or on p_{phi1}
};
SplitCounts split_face_counts(const FaceLattice& l, std::size_t phi1_index);

struct FaceInequality {
  std::string name;
  Integer lhs;
  Integer rhs;
  bool holds = true;
};
struct FaceBoundReport {
  std::vector<FaceInequality> checks;
  bool ok() const;
};
// Generic bounds phi_{k-j} <= C(n+k+1, j), the McMullen figures for k = 3 and,
// when phi1_index is given, the cone-case bounds for the split counts.
// ViolationError on failure unless throw_on_violation is false.
FaceBoundReport check_face_bounds(const FaceLattice& l, long n, long k, std::optional<std::size_t> phi1_index = {},
                                  bool throw_on_violation = true);

// Shifts every constant term by a seeded amount of size rel * scale.
HPolyhedron perturb_constants(const HPolyhedron& p, Rng& rng, const Rational& rel = Rational(1) / 1000000000);

// n+k forms in k variables, the last k being the coordinates, with a
// nonempty interior.
HPolyhedron random_delta(long n, long k, Rng& rng);
// Seeded point strictly inside p, a random step away from p.interior.
RatVector random_interior_point(const HPolyhedron& p, Rng& rng);
// Cone case: p_1 affine, p_2..p_n and the coordinates linear; p_1 cuts the
// cone with the origin kept.
HPolyhedron random_cone_delta(long n, long k, Rng& rng);

Json face_lattice_to_json(const FaceLattice& l);

}  // namespace fnx

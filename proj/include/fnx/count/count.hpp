#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fnx/core/linear_form.hpp"
#include "fnx/core/sparse_poly.hpp"
#include "fnx/core/support.hpp"
#include "fnx/core/upoly.hpp"

namespace fnx {

enum class CountMethod { SturmExact, ResultantExact, NewtonNumeric };
std::string method_name(CountMethod m);

struct Solution {
  RealVector point;
  Real residual;  // max |f_i| at the point
};

struct CountReport {
  long count = 0;
  CountMethod method = CountMethod::SturmExact;
  bool certified = false;
  std::vector<Solution> solutions;
  // smallest gap between distinct real roots of the eliminant (exact paths)
  Rational degeneracy_margin;
  // real solutions lying on the region boundary, excluded because the region is open
  long boundary_excluded = 0;
  // count after a seeded perturbation, when the instance was degenerate
  std::optional<long> perturbed_count;
  std::vector<std::pair<std::string, Integer>> bounds_checked;
  std::string notes;
};

// Positive roots of a Laurent polynomial in one variable.
CountReport count_positive_1d(const SparsePoly& f);
// Roots of f (one variable) where every form is strictly positive.
CountReport count_in_region_1d(const SparsePoly& f, const std::vector<LinearForm>& forms);

// Solutions of f = g = 0 (Laurent, two variables) in the open positive
// quadrant.
CountReport count_positive_2d(const SparsePoly& f, const SparsePoly& g, std::uint64_t seed = 0);
// Solutions of f = g = 0 where every form is strictly positive.
CountReport count_in_region_2d(const SparsePoly& f, const SparsePoly& g, const std::vector<LinearForm>& forms,
                               std::uint64_t seed = 0);

// Exact positive-solution count of a system with n <= 2; rational exponents
// are handled through the recorded common denominator.
CountReport count_system_exact(const FewnomialSystem& sys, std::uint64_t seed = 0);

// Multi-start damped Newton in log coordinates from a Halton grid over
// [-box, box]^n. Never certified.
CountReport newton_census(const FewnomialSystem& sys, int starts, std::uint64_t seed, double box = 4.0);

// Tolerance for perturbing degenerate instances.
inline const Rational kCountPerturbation(Integer(1), Integer(1000000000));

}  // namespace fnx

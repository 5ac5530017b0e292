#pragma once

#include <optional>
#include <vector>

#include "fnx/core/upoly.hpp"

namespace fnx {

// Sturm sequence p, p', -rem(...), ... with positive rescaling only.
std::vector<UPoly> sturm_sequence(const UPoly& p);
int sign_variations(const std::vector<UPoly>& seq, const Rational& x);
int sign_variations_at_infinity(const std::vector<UPoly>& seq, bool positive);

// Distinct real roots of p in the open interval (lo, hi); nullopt ends are
// infinite. Throws ZeroPolyError for p = 0.
long sturm_count(const UPoly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi);
// Distinct roots in (0, +inf).
long sturm_positive_roots(const UPoly& p);

// A real root of a squarefree polynomial: either an exact rational or the
// unique root of `poly` in the open interval (lo, hi), where poly(lo) and
// poly(hi) are nonzero with opposite signs.
struct RealRoot {
  UPoly poly;
  Rational lo;
  Rational hi;
  bool exact = false;

  const Rational& value() const { return lo; }  // valid when exact
  void refine();                                 // halves the interval
  void refine_to(const Rational& width);
  Real approx() const;                           // midpoint at current precision
};

// Upper bound on the absolute value of every complex root.
Rational cauchy_root_bound(const UPoly& p);

// All real roots of p (squarefree part taken internally), increasing.
std::vector<RealRoot> isolate_real_roots(const UPoly& p);

// Sign of q at the root. Exact: zero detected through gcd.
int sign_at_root(const UPoly& q, RealRoot& r);
// True when r is a root of q.
bool vanishes_at_root(const UPoly& q, const RealRoot& r);

}  // namespace fnx

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fnx/bounds/constants.hpp"
#include "fnx/core/rational.hpp"
#include "fnx/core/real.hpp"

namespace fnx {

enum class FormulaId {
  Khovanskii,
  NewFewnomial,
  BoundK2,
  BoundK3,
  LowerBound,
  KappaGeneral,   // (e^2+3)/8 2^C(k,2) n^k
  KappaSparse,    // explicit k <= n bound
  KappaK2,        // floor((5n+1)/2)
  KappaK3,        // 29/2 n^2 - 8n + 9/2
  Descartes,      // n = 1
  BihanK1,        // k = 1 positive solutions
  KappaK1,        // k = 1 compact components
};

std::string formula_name(FormulaId id);

// A bound with its value bracketed by rationals (equal when exact).
// `strict` marks "fewer than" statements; integer_cap is the largest count
// the statement allows.
struct BoundValue {
  FormulaId id{};
  Rational lower;
  Rational upper;
  bool strict = false;
  Integer integer_cap;
  std::string assumptions;

  bool exact() const { return lower == upper; }
  Real real_value() const;
  std::string name() const { return formula_name(id); }
};

// Integer cap from an enclosure: value-1 for a strict bound with exact
// integer value, floor otherwise, clamped at 0.
Integer integer_cap(const Rational& lower, const Rational& upper, bool strict);

BoundValue khovanskii_bound(long n, long k);
// nW replaces n in the formula when given.
BoundValue new_fewnomial_bound(long n, long k, std::optional<long> nW = std::nullopt);
BoundValue bound_k2(long n);
BoundValue bound_k3(long n);
Rational lower_bound(long n, long k);

struct TermCheck {
  int j;
  Integer a_j;
  Rational rhs;  // 2^(j-1)/j! * a_0
  bool holds;
};

struct TechnicalReport {
  long n, k;
  Integer a0;            // 2^C(k,2) n^k
  Integer lhs;           // sum_{j=1..k} a_j
  Rational rhs_literal;  // 3.1945 * a0
  Rational rhs_lower;    // lower((e^2-1)/2) * a0
  bool holds_literal;
  bool holds_enclosure;
  std::vector<TermCheck> terms;  // empty for (2,2)
  bool holds_terms;
  bool ok() const { return holds_literal && holds_enclosure && holds_terms; }
};

// a_j = 2^C(k-j,2) n^(k-j) C(n+k+1, j). Throws ViolationError on failure
// unless `throw_on_violation` is false.
TechnicalReport technical_inequality_check(long n, long k, bool throw_on_violation = true);

// Every bound on the number of compact components that applies at (n,k).
std::vector<BoundValue> kappa_bounds(long n, long k);
// Smallest integer cap among kappa_bounds(n,k).
Integer best_kappa_cap(long n, long k);

// n = 1: n + k (Descartes); k = 1: n + 1 (Bihan).
Integer descartes_k_any_n1(long n_plus_k);
Integer bihan_k1(long n);
// k = 1 compact components.
Integer kappa_k1();

// All solution-count bounds for the table at (n,k); skips formulas whose
// range excludes (n,k).
std::vector<BoundValue> bounds_table_row(long n, long k);

}  // namespace fnx

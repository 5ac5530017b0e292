#include "fnx/bounds/bounds.hpp"

#include <algorithm>

#include "fnx/core/errors.hpp"

namespace fnx {

std::string formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::Khovanskii: return "khovanskii";
    case FormulaId::NewFewnomial: return "new_fewnomial";
    case FormulaId::BoundK2: return "bound_k2";
    case FormulaId::BoundK3: return "bound_k3";
    case FormulaId::LowerBound: return "lower_bound";
    case FormulaId::KappaGeneral: return "kappa_general";
    case FormulaId::KappaSparse: return "kappa_sparse";
    case FormulaId::KappaK2: return "kappa_k2";
    case FormulaId::KappaK3: return "kappa_k3";
    case FormulaId::Descartes: return "descartes";
    case FormulaId::BihanK1: return "bihan_k1";
    case FormulaId::KappaK1: return "kappa_k1";
  }
  return "unknown";
}

Real BoundValue::real_value() const { return (to_real(lower) + to_real(upper)) / 2; }

Integer integer_cap(const Rational& lower, const Rational& upper, bool strict) {
  Integer cap;
  if (lower == upper) {
    cap = floor(lower);
    if (strict && is_integer(lower)) cap -= 1;
  } else {
    // the true value lies strictly inside (lower, upper)
    cap = floor(lower);
    if (floor(upper) != cap) {
      if (!(is_integer(upper) && floor(upper) == cap + 1))
        throw InconclusiveError("enclosure too wide to fix an integer cap");
    }
  }
  return cap < 0 ? Integer(0) : cap;
}

namespace {

BoundValue exact_bound(FormulaId id, const Rational& v, bool strict, std::string assumptions) {
  BoundValue b;
  b.id = id;
  b.lower = b.upper = v;
  b.strict = strict;
  b.integer_cap = integer_cap(v, v, strict);
  b.assumptions = std::move(assumptions);
  return b;
}

// alpha + beta * e^2 with beta >= 0
BoundValue e2_bound(FormulaId id, const Rational& alpha, const Rational& beta, bool strict, std::string assumptions) {
  const auto& e = e_squared();
  BoundValue b;
  b.id = id;
  b.lower = alpha + beta * e.lower;
  b.upper = alpha + beta * e.upper;
  b.strict = strict;
  b.integer_cap = integer_cap(b.lower, b.upper, strict);
  b.assumptions = std::move(assumptions);
  return b;
}

Rational ipow(long base, long e) { return pow(Rational(base), e); }

}  // namespace

BoundValue khovanskii_bound(long n, long k) {
  if (n < 1 || k < 1) throw RangeError("khovanskii_bound needs n, k >= 1");
  Rational v = Rational(two_pow_choose2(n + k)) * ipow(n + 1, n + k);
  return exact_bound(FormulaId::Khovanskii, v, false, "n,k>=1");
}

BoundValue new_fewnomial_bound(long n, long k, std::optional<long> nW) {
  if (n < 2 || k < 2) throw RangeError("new fewnomial bound is proven for n, k >= 2");
  long m = n;
  std::string note = "n,k>=2";
  if (nW) {
    if (*nW < 0 || *nW > n) throw RangeError("nW must lie in [0, n]");
    m = *nW;
    note += ", n replaced by nW=" + std::to_string(m);
  }
  // (e^2+3)/4 * 2^C(k,2) m^k
  Rational c = Rational(two_pow_choose2(k)) * ipow(m, k) / 4;
  return e2_bound(FormulaId::NewFewnomial, 3 * c, c, true, note);
}

BoundValue bound_k2(long n) {
  if (n < 2) throw RangeError("bound_k2 needs n >= 2");
  Integer v = 2 * n * n + (n + 1) * (n + 3) / 2;
  return exact_bound(FormulaId::BoundK2, Rational(v), false, "k=2,n>=2");
}

BoundValue bound_k3(long n) {
  if (n < 2) throw RangeError("bound_k3 needs n >= 2");
  Integer v = Integer(9) * n * n * n + 5 * n * n + 3 * n + 2;
  return exact_bound(FormulaId::BoundK3, Rational(v), false, "k=3,n>=2");
}

Rational lower_bound(long n, long k) {
  if (n < 1 || k < 1) throw RangeError("lower_bound needs n, k >= 1");
  return pow(1 + Rational(n) / k, k);
}

TechnicalReport technical_inequality_check(long n, long k, bool throw_on_violation) {
  if (n < 2 || k < 2) throw RangeError("technical inequality is stated for n, k >= 2");
  TechnicalReport r{};
  r.n = n;
  r.k = k;
  r.a0 = two_pow_choose2(k) * ipow(n, k).get_num();
  r.lhs = 0;
  std::vector<Integer> a(static_cast<std::size_t>(k) + 1);
  for (long j = 1; j <= k; ++j) {
    a[j] = two_pow_choose2(k - j) * ipow(n, k - j).get_num() * binomial(n + k + 1, j);
    r.lhs += a[j];
  }
  r.rhs_literal = Rational(31945) / 10000 * Rational(r.a0);
  r.rhs_lower = e2_minus_1_over_2().lower * Rational(r.a0);
  r.holds_literal = Rational(r.lhs) <= r.rhs_literal;
  r.holds_enclosure = Rational(r.lhs) <= r.rhs_lower;
  r.holds_terms = true;
  if (!(n == 2 && k == 2)) {
    for (long j = 1; j <= k; ++j) {
      Rational rhs = pow(Rational(2), j - 1) / Rational(factorial(j)) * Rational(r.a0);
      bool ok = Rational(a[j]) <= rhs;
      r.terms.push_back({static_cast<int>(j), a[j], rhs, ok});
      r.holds_terms = r.holds_terms && ok;
    }
  }
  if (throw_on_violation && !r.ok()) {
    throw ViolationError("technical inequality fails at n=" + std::to_string(n) + ", k=" + std::to_string(k));
  }
  return r;
}

std::vector<BoundValue> kappa_bounds(long n, long k) {
  if (n < 1 || k < 1) throw RangeError("kappa_bounds needs n, k >= 1");
  std::vector<BoundValue> out;
  if (n == 1) {
    out.push_back(exact_bound(FormulaId::Descartes, Rational(n + k), false, "n=1"));
    return out;
  }
  if (k == 1) {
    out.push_back(exact_bound(FormulaId::KappaK1, Rational(kappa_k1()), false, "k=1"));
    return out;
  }
  {
    Rational c = Rational(two_pow_choose2(k)) * ipow(n, k) / 8;
    out.push_back(e2_bound(FormulaId::KappaGeneral, 3 * c, c, true, "n,k>=2"));
  }
  if (k <= n) {
    // (k/2 2^C(k,2) + (e^2+1)/8 k 2^C(k-1,2)) n^(k-1) + e^2/8 2^C(k-2,2) n^(k-2)
    Rational t1 = Rational(k) / 2 * Rational(two_pow_choose2(k)) * ipow(n, k - 1);
    Rational t2 = Rational(k) / 8 * Rational(two_pow_choose2(k - 1)) * ipow(n, k - 1);
    Rational t3 = Rational(two_pow_choose2(k - 2)) / 8 * ipow(n, k - 2);
    out.push_back(e2_bound(FormulaId::KappaSparse, t1 + t2, t2 + t3, false, "2<=k<=n"));
  }
  if (k == 2) {
    out.push_back(exact_bound(FormulaId::KappaK2, Rational((5 * n + 1) / 2), false, "k=2,n>=2"));
  }
  if (k == 3) {
    Rational v = Rational(29) / 2 * n * n - 8 * n + Rational(9) / 2;
    out.push_back(exact_bound(FormulaId::KappaK3, v, false, "k=3,n>=2"));
  }
  return out;
}

Integer best_kappa_cap(long n, long k) {
  auto all = kappa_bounds(n, k);
  Integer best = all.front().integer_cap;
  for (const auto& b : all) best = std::min(best, b.integer_cap);
  return best;
}

Integer descartes_k_any_n1(long n_plus_k) {
  if (n_plus_k < 1) throw RangeError("monomial count must be positive");
  return n_plus_k;
}

Integer bihan_k1(long n) {
  if (n < 1) throw RangeError("n must be positive");
  return n + 1;
}

Integer kappa_k1() { return 1; }

std::vector<BoundValue> bounds_table_row(long n, long k) {
  std::vector<BoundValue> row;
  row.push_back(khovanskii_bound(n, k));
  if (n >= 2 && k >= 2) row.push_back(new_fewnomial_bound(n, k));
  if (k == 2 && n >= 2) row.push_back(bound_k2(n));
  if (k == 3 && n >= 2) row.push_back(bound_k3(n));
  if (n == 1) row.push_back(exact_bound(FormulaId::Descartes, Rational(descartes_k_any_n1(n + k)), false, "n=1"));
  if (k == 1) row.push_back(exact_bound(FormulaId::BihanK1, Rational(bihan_k1(n)), false, "k=1"));
  BoundValue lb = exact_bound(FormulaId::LowerBound, lower_bound(n, k), false, "lower bound");
  lb.integer_cap = floor(lb.lower);
  row.push_back(lb);
  return row;
}

}  // namespace fnx

#include "fnx/core/sparse_poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fnx {

SparsePoly SparsePoly::constant(int vars, const Rational& c) {
  SparsePoly p(vars);
  p.add_term(Exponent(static_cast<std::size_t>(vars), 0), c);
  return p;
}

SparsePoly SparsePoly::variable(int vars, int index) {
  SparsePoly p(vars);
  Exponent e(static_cast<std::size_t>(vars), 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

SparsePoly SparsePoly::linear(const Rational& b0, const RatVector& b) {
  const int vars = static_cast<int>(b.size());
  SparsePoly p = constant(vars, b0);
  for (int l = 0; l < vars; ++l) {
    Exponent e(b.size(), 0);
    e[l] = 1;
    p.add_term(e, b[l]);
  }
  return p;
}

SparsePoly SparsePoly::from_rational_terms(int vars,
                                           const std::vector<std::pair<RatVector, Rational>>& terms) {
  Integer lcm = 1;
  for (const auto& [e, c] : terms) {
    for (const auto& q : e) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  if (!lcm.fits_slong_p()) throw std::overflow_error("exponent denominator too large");
  SparsePoly p(vars, lcm.get_si());
  for (const auto& [e, c] : terms) {
    Exponent ie(static_cast<std::size_t>(vars));
    for (int i = 0; i < vars; ++i) {
      Rational scaled = e[i] * Rational(lcm);
      if (!scaled.get_num().fits_sint_p()) throw std::overflow_error("exponent too large");
      ie[i] = static_cast<int>(scaled.get_num().get_si());
    }
    p.add_term(ie, c);
  }
  return p;
}

Rational SparsePoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (vars_ == 0 && terms_.empty()) {
    vars_ = o.vars_;
    denom_ = o.denom_;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (vars_ == 0 && terms_.empty()) {
    vars_ = o.vars_;
    denom_ = o.denom_;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r(std::max(a.vars_, b.vars_), std::max(a.denom_, b.denom_));
  Exponent e(static_cast<std::size_t>(r.vars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < r.vars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SparsePoly operator*(const Rational& s, const SparsePoly& a) {
  SparsePoly r(a.vars_, a.denom_);
  if (s == 0) return r;
  r.terms_ = a.terms_;
  for (auto& [e, c] : r.terms_) c *= s;
  return r;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result = constant(vars_, 1);
  result.denom_ = denom_;
  SparsePoly base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

SparsePoly SparsePoly::derivative(int var) const {
  SparsePoly r(vars_, denom_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= static_cast<int>(denom_);
    Rational f(e[var], denom_);
    f.canonicalize();
    r.add_term(d, c * f);
  }
  return r;
}

SparsePoly SparsePoly::times_monomial(const Exponent& m) const {
  SparsePoly r(vars_, denom_);
  for (const auto& [e, c] : terms_) {
    Exponent d = e;
    for (int i = 0; i < vars_; ++i) d[i] += m[i];
    r.terms_.emplace(std::move(d), c);
  }
  return r;
}

Exponent SparsePoly::clear_laurent() {
  Exponent shift(static_cast<std::size_t>(vars_), 0);
  if (terms_.empty()) return shift;
  for (int i = 0; i < vars_; ++i) {
    int mn = std::numeric_limits<int>::max();
    for (const auto& [e, c] : terms_) mn = std::min(mn, e[i]);
    shift[i] = -mn;
  }
  *this = times_monomial(shift);
  return shift;
}

Rational SparsePoly::eval(const RatVector& x) const {
  if (denom_ != 1) throw std::logic_error("exact evaluation needs integer exponents");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < vars_; ++i) {
      if (e[i] != 0) t *= fnx::pow(x[i], e[i]);
    }
    acc += t;
  }
  return acc;
}

namespace {

Real monomial_value(const Exponent& e, long denom, const RealVector& x, const std::vector<Real>& logs) {
  if (denom == 1) {
    Real t = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t *= boost::multiprecision::pow(x[i], e[i]);
    }
    return t;
  }
  Real s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0) s += logs[i] * e[i];
  }
  return boost::multiprecision::exp(s / denom);
}

}  // namespace

Real SparsePoly::eval(const RealVector& x_in) const {
  const RealVector x = at_precision(x_in);
  std::vector<Real> logs;
  if (denom_ != 1) {
    for (const auto& v : x) logs.push_back(boost::multiprecision::log(v));
  }
  Real acc = 0;
  for (const auto& [e, c] : terms_) acc += to_real(c) * monomial_value(e, denom_, x, logs);
  return acc;
}

Real SparsePoly::eval_abs(const RealVector& x_in) const {
  const RealVector x = at_precision(x_in);
  std::vector<Real> logs;
  if (denom_ != 1) {
    for (const auto& v : x) logs.push_back(boost::multiprecision::log(v));
  }
  Real acc = 0;
  for (const auto& [e, c] : terms_) acc += to_real(fnx::abs(c)) * monomial_value(e, denom_, x, logs);
  return acc;
}

int SparsePoly::total_degree() const {
  if (terms_.empty()) return -1;
  int best = std::numeric_limits<int>::min();
  for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
  return best;
}

int SparsePoly::min_total_degree() const {
  if (terms_.empty()) return -1;
  int best = std::numeric_limits<int>::max();
  for (const auto& [e, c] : terms_) best = std::min(best, std::accumulate(e.begin(), e.end(), 0));
  return best;
}

int SparsePoly::max_degree(int var) const {
  if (terms_.empty()) return -1;
  int best = std::numeric_limits<int>::min();
  for (const auto& [e, c] : terms_) best = std::max(best, e[var]);
  return best;
}

SparsePoly SparsePoly::divide_exact(const SparsePoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  SparsePoly rem = *this;
  SparsePoly quot(vars_, denom_);
  const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
  Exponent qe(static_cast<std::size_t>(vars_));
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.rbegin();
    for (int i = 0; i < vars_; ++i) {
      qe[i] = re[i] - lead_e[i];
      if (qe[i] < 0) throw std::logic_error("divide_exact: nonzero remainder");
    }
    Rational qc = rc / lead_c;
    quot.add_term(qe, qc);
    for (const auto& [de, dc] : divisor.terms_) {
      Exponent t = de;
      for (int i = 0; i < vars_; ++i) t[i] += qe[i];
      rem.add_term(t, -qc * dc);
    }
  }
  return quot;
}

}  // namespace fnx

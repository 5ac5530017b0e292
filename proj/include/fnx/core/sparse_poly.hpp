#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fnx/core/rational.hpp"
#include "fnx/core/real.hpp"

namespace fnx {

using Exponent = std::vector<int>;

// Multivariate (Laurent) polynomial with exact rational coefficients.
//
// Exponent vectors are integers; a polynomial whose true exponents are
// rational stores them multiplied by the common denominator `denom_clear`
// (N), i.e. it is a polynomial in z^(1/N). Terms are kept in a map ordered
// lexicographically by exponent, so the last entry is the lex-leading term.
// Zero coefficients are never stored.
class SparsePoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  SparsePoly() = default;
  explicit SparsePoly(int vars, long denom_clear = 1) : vars_(vars), denom_(denom_clear) {}

  static SparsePoly constant(int vars, const Rational& c);
  static SparsePoly variable(int vars, int index);
  // b0 + sum_l b[l] * x_l
  static SparsePoly linear(const Rational& b0, const RatVector& b);
  // Builds from rational exponent vectors, clearing denominators by their lcm.
  static SparsePoly from_rational_terms(int vars, const std::vector<std::pair<RatVector, Rational>>& terms);

  int vars() const { return vars_; }
  long denom_clear() const { return denom_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const Rational& s, const SparsePoly& a);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) = default;

  SparsePoly pow(unsigned e) const;
  // d/dx_var of the polynomial in the original (un-cleared) variables.
  SparsePoly derivative(int var) const;
  SparsePoly times_monomial(const Exponent& e) const;
  // Multiplies by the monomial that makes every exponent nonnegative with
  // minimum zero in each variable; returns the monomial used.
  Exponent clear_laurent();

  // Exact evaluation; requires denom_clear() == 1 and, for negative
  // exponents, nonzero coordinates.
  Rational eval(const RatVector& x) const;
  // Evaluation at a point of the positive orthant (any denom_clear).
  Real eval(const RealVector& x) const;
  // Sum of |term| at a positive point; scale for relative residuals.
  Real eval_abs(const RealVector& x) const;

  int total_degree() const;
  int min_total_degree() const;
  int max_degree(int var) const;

  // Exact quotient; throws std::logic_error if the division leaves a remainder.
  SparsePoly divide_exact(const SparsePoly& divisor) const;

 private:
  int vars_ = 0;
  long denom_ = 1;
  TermMap terms_;
};

}  // namespace fnx

#pragma once

#include <utility>
#include <vector>

#include "fnx/core/rational.hpp"
#include "fnx/core/real.hpp"

namespace fnx {

// Dense univariate polynomial over Q, coefficients stored low degree first.
// Never stores a zero leading coefficient.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(RatVector coeffs);
  static UPoly constant(const Rational& c);
  static UPoly monomial(const Rational& c, int degree);
  // x - r
  static UPoly linear_root(const Rational& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lc() const { return c_.back(); }
  Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  const RatVector& coeffs() const { return c_; }

  UPoly derivative() const;
  Rational eval(const Rational& x) const;
  Real eval(const Real& x) const;
  int sign_at(const Rational& x) const;
  // Sign of p(x) as x -> +inf (positive=true) or -inf.
  int sign_at_infinity(bool positive) const;

  // Positive rational multiple with coprime integer coefficients.
  UPoly primitive() const;
  bool has_integer_coeffs() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) = default;

 private:
  void trim();
  RatVector c_;
};

// Quotient and remainder over Q. Divisor must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// Throws std::logic_error if b does not divide a.
UPoly exact_div(const UPoly& a, const UPoly& b);
// Positive multiple of the remainder of a by b, with coprime integer
// coefficients (signs preserved, as Sturm sequences need).
UPoly scaled_remainder(const UPoly& a, const UPoly& b);
// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
// Product of the distinct irreducible factors, primitive.
UPoly squarefree_part(const UPoly& p);
UPoly pow(const UPoly& p, unsigned e);

// Exact enclosure of {p(x) : lo <= x <= hi} by interval Horner evaluation.
std::pair<Rational, Rational> interval_eval(const UPoly& p, const Rational& lo, const Rational& hi);

}  // namespace fnx

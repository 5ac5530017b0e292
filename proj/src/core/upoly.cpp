#include "fnx/core/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace fnx {

UPoly::UPoly(RatVector coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly(RatVector{c}); }

UPoly UPoly::monomial(const Rational& c, int degree) {
  RatVector v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear_root(const Rational& r) { return UPoly(RatVector{-r, 1}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  RatVector d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Real UPoly::eval(const Real& x) const {
  Real acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_real(*it);
  return acc;
}

bool UPoly::has_integer_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

int UPoly::sign_at(const Rational& x) const {
  if (c_.empty()) return 0;
  if (has_integer_coeffs()) {
    // sign of sum c_i p^i q^(d-i), with x = p/q and q > 0
    const Integer& p = x.get_num();
    const Integer& q = x.get_den();
    Integer acc = 0;
    // Horner on the homogenized form: acc = acc * p + c_i * q^(d-i)
    const int d = degree();
    std::vector<Integer> qp(static_cast<std::size_t>(d) + 1);
    qp[0] = 1;
    for (int i = 1; i <= d; ++i) qp[i] = qp[i - 1] * q;
    for (int i = d; i >= 0; --i) acc = acc * p + c_[i].get_num() * qp[d - i];
    return sgn(acc);
  }
  return sgn(eval(x));
}

int UPoly::sign_at_infinity(bool positive) const {
  if (c_.empty()) return 0;
  int s = sgn(lc());
  if (!positive && degree() % 2 == 1) s = -s;
  return s;
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return {};
  Integer den = common_denominator(c_);
  Integer g = 0;
  std::vector<Integer> ints(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    ints[i] = c_[i].get_num() * (den / c_[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  RatVector out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = Rational(ints[i] / g);
  return UPoly(std::move(out));
}

UPoly UPoly::operator-() const {
  RatVector v = c_;
  for (auto& x : v) x = -x;
  return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  RatVector v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatVector v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  if (s == 0) return {};
  RatVector v = a.c_;
  for (auto& x : v) x *= s;
  return UPoly(std::move(v));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  RatVector r = a.coeffs();
  const int db = b.degree();
  RatVector q(static_cast<std::size_t>(a.degree() - db) + 1);
  const Rational inv_lc = 1 / b.lc();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] * inv_lc;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeff(j);
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

namespace {

using IntPoly = std::vector<Integer>;

void trim_int(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void make_primitive(IntPoly& a) {
  if (a.empty()) return;
  Integer g = 0;
  for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (a.back() < 0) g = -g;
  for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntPoly to_int_poly(const UPoly& p) {
  IntPoly out;
  const UPoly prim = p.primitive();
  for (const auto& q : prim.coeffs()) out.push_back(q.get_num());
  return out;
}

// Pseudo-remainder of a by b, made primitive.
IntPoly primitive_prem(IntPoly a, const IntPoly& b) {
  const std::size_t nb = b.size();
  const Integer& lb = b.back();
  while (!a.empty() && a.size() >= nb) {
    const Integer la = a.back();
    const std::size_t shift = a.size() - nb;
    for (auto& x : a) x *= lb;
    for (std::size_t j = 0; j < nb; ++j) a[shift + j] -= la * b[j];
    trim_int(a);
  }
  make_primitive(a);
  return a;
}

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 inv_mod(u64 a, u64 p) {
  u64 r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> reduce_mod(const IntPoly& a, u64 p) {
  std::vector<u64> out(a.size());
  mpz_class pp(std::to_string(p));
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a[i].get_mpz_t(), pp.get_mpz_t());
    out[i] = std::stoull(r.get_str());
  }
  return out;
}

// Degree of gcd(a, b) mod p, or -1 when p divides a leading coefficient.
int gcd_degree_mod(const IntPoly& a, const IntPoly& b, u64 p) {
  auto x = reduce_mod(a, p), y = reduce_mod(b, p);
  if (x.back() == 0 || y.back() == 0) return -1;
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    const u64 inv = inv_mod(y.back(), p);
    while (x.size() >= y.size() && !x.empty()) {
      const u64 f = mul_mod(x.back(), inv, p);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j) x[shift + j] = (x[shift + j] + p - mul_mod(f, y[j], p)) % p;
      trim(x);
    }
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

}  // namespace

UPoly scaled_remainder(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  IntPoly x = to_int_poly(a), y = to_int_poly(b);
  // remainders do not depend on the divisor's scale, so make its lead positive
  if (y.back() < 0)
    for (auto& v : y) v = -v;
  const std::size_t ny = y.size();
  while (!x.empty() && x.size() >= ny) {
    const Integer lx = x.back();
    const std::size_t shift = x.size() - ny;
    for (auto& v : x) v *= y.back();
    for (std::size_t j = 0; j < ny; ++j) x[shift + j] -= lx * y[j];
    trim_int(x);
  }
  if (x.empty()) return {};
  Integer g = 0;
  for (const auto& v : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  RatVector c;
  for (auto& v : x) {
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    c.emplace_back(v);
  }
  return UPoly(std::move(c));
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return (1 / b.lc()) * b;
  if (b.is_zero()) return (1 / a.lc()) * a;
  IntPoly x = to_int_poly(a), y = to_int_poly(b);
  if (x.size() == 1 || y.size() == 1) return UPoly::constant(1);
  // a good prime bounds the gcd degree from above; degree 0 settles it
  for (u64 p : {2305843009213693951ULL, 4611686018427387847ULL}) {
    if (gcd_degree_mod(x, y, p) == 0) return UPoly::constant(1);
  }
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    IntPoly r = primitive_prem(std::move(x), y);
    x = std::move(y);
    y = std::move(r);
  }
  RatVector c;
  for (const auto& v : x) c.emplace_back(v);
  UPoly g(std::move(c));
  return (1 / g.lc()) * g;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.primitive();
  UPoly g = gcd(p, p.derivative());
  return exact_div(p, g).primitive();
}

UPoly pow(const UPoly& p, unsigned e) {
  UPoly result = UPoly::constant(1);
  UPoly base = p;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

std::pair<Rational, Rational> interval_eval(const UPoly& p, const Rational& lo, const Rational& hi) {
  Rational a = 0, b = 0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    // [a,b] * [lo,hi] + c
    Rational p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
    Rational mn = std::min({p1, p2, p3, p4});
    Rational mx = std::max({p1, p2, p3, p4});
    a = mn + *it;
    b = mx + *it;
  }
  return {a, b};
}

}  // namespace fnx

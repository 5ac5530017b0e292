#include "fnx/count/sturm.hpp"

#include <algorithm>

#include "fnx/core/errors.hpp"

namespace fnx {

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p.primitive());
  UPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d.primitive());
  while (true) {
    UPoly r = scaled_remainder(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

namespace {

int count_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sign_variations(const std::vector<UPoly>& seq, const Rational& x) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(p.sign_at(x));
  return count_changes(s);
}

int sign_variations_at_infinity(const std::vector<UPoly>& seq, bool positive) {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(p.sign_at_infinity(positive));
  return count_changes(s);
}

long sturm_count(const UPoly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (p.is_zero()) throw ZeroPolyError("Sturm count of the zero polynomial");
  UPoly q = squarefree_part(p);
  // drop roots sitting on the finite ends so the count is for the open interval
  for (const auto* end : {&lo, &hi}) {
    if (*end && q.degree() > 0 && q.eval(**end) == 0) q = exact_div(q, UPoly::linear_root(**end));
  }
  if (q.degree() <= 0) return 0;
  if (lo && hi && *lo >= *hi) return 0;
  auto seq = sturm_sequence(q);
  int va = lo ? sign_variations(seq, *lo) : sign_variations_at_infinity(seq, false);
  int vb = hi ? sign_variations(seq, *hi) : sign_variations_at_infinity(seq, true);
  return va - vb;
}

long sturm_positive_roots(const UPoly& p) { return sturm_count(p, Rational(0), std::nullopt); }

void RealRoot::refine() {
  if (exact) return;
  Rational mid = (lo + hi) / 2;
  int sm = poly.sign_at(mid);
  if (sm == 0) {
    lo = hi = mid;
    exact = true;
    return;
  }
  if (sm == poly.sign_at(lo)) {
    lo = mid;
  } else {
    hi = mid;
  }
}

void RealRoot::refine_to(const Rational& width) {
  while (!exact && hi - lo > width) refine();
}

Real RealRoot::approx() const {
  if (exact) return to_real(lo);
  return (to_real(lo) + to_real(hi)) / 2;
}

Rational cauchy_root_bound(const UPoly& p) {
  Rational m = 0;
  const Rational& lc = p.lc();
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / lc)));
  return 1 + m;
}

std::vector<RealRoot> isolate_real_roots(const UPoly& p) {
  std::vector<RealRoot> out;
  if (p.is_zero()) throw ZeroPolyError("root isolation of the zero polynomial");
  UPoly q = squarefree_part(p);
  if (q.degree() <= 0) return out;
  auto seq = sturm_sequence(q);
  Rational bound = cauchy_root_bound(q);
  struct Piece {
    Rational a, b;
    int va, vb;
  };
  std::vector<Piece> stack{{-bound, bound, sign_variations(seq, -bound), sign_variations(seq, bound)}};
  while (!stack.empty()) {
    Piece piece = stack.back();
    stack.pop_back();
    int n = piece.va - piece.vb;
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({q, piece.a, piece.b, false});
      continue;
    }
    // split at a non-root so every interval end stays a non-root
    Rational mid;
    for (long den = 2;; ++den) {
      mid = piece.a + (piece.b - piece.a) / den;
      if (q.sign_at(mid) != 0) break;
    }
    int vm = sign_variations(seq, mid);
    stack.push_back({piece.a, mid, piece.va, vm});
    stack.push_back({mid, piece.b, vm, piece.vb});
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  return out;
}

bool vanishes_at_root(const UPoly& q, const RealRoot& r) {
  if (q.is_zero()) return true;
  if (r.exact) return q.sign_at(r.lo) == 0;
  UPoly g = gcd(r.poly, q);
  if (g.degree() <= 0) return false;
  return sturm_count(g, r.lo, r.hi) > 0;
}

int sign_at_root(const UPoly& q, RealRoot& r) {
  if (q.is_zero()) return 0;
  if (r.exact) return q.sign_at(r.lo);
  if (q.degree() == 0) return sgn(q.lc());
  if (vanishes_at_root(q, r)) return 0;
  // bisection is cheap next to interval evaluation, so refine in growing batches
  for (int batch = 1;; batch = std::min(2 * batch, 16)) {
    auto [a, b] = interval_eval(q, r.lo, r.hi);
    if (a > 0) return 1;
    if (b < 0) return -1;
    for (int i = 0; i < batch && !r.exact; ++i) r.refine();
    if (r.exact) return q.sign_at(r.lo);
  }
}

}  // namespace fnx

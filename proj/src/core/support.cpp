#include "fnx/core/support.hpp"

#include <algorithm>
#include <set>

#include "fnx/core/errors.hpp"

namespace fnx {

bool Support::contains_origin() const {
  return std::any_of(points.begin(), points.end(), [](const RatVector& p) {
    return std::all_of(p.begin(), p.end(), [](const Rational& q) { return q == 0; });
  });
}

bool Support::integer_exponents() const {
  for (const auto& p : points)
    for (const auto& q : p)
      if (!is_integer(q)) return false;
  return true;
}

Matrix Support::exponent_matrix() const {
  Matrix m(static_cast<std::size_t>(n), points.size() - 1);
  for (std::size_t j = 1; j < points.size(); ++j)
    for (int i = 0; i < n; ++i) m(i, j - 1) = points[j][i];
  return m;
}

SparsePoly FewnomialSystem::polynomial(std::size_t i) const {
  std::vector<std::pair<RatVector, Rational>> terms;
  for (std::size_t j = 0; j < support.size(); ++j) terms.emplace_back(support.points[j], coeffs(i, j));
  return SparsePoly::from_rational_terms(n, terms);
}

int affine_dimension(const std::vector<RatVector>& pts) {
  if (pts.empty()) return -1;
  std::vector<RatVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVector d(pts[i].size());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = pts[i][c] - pts[0][c];
    diffs.push_back(std::move(d));
  }
  if (diffs.empty()) return 0;
  return static_cast<int>(rank(Matrix::from_rows(diffs)));
}

NormalizedSystem normalize_support(const Support& raw, const FewnomialSystem& system) {
  const int n = raw.n;
  const std::size_t m = raw.size();
  if (m == 0) throw SpanError("empty support");
  for (const auto& p : raw.points)
    if (static_cast<int>(p.size()) != n) throw SpanError("exponent vector of wrong dimension");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (raw.points[i] == raw.points[j]) throw SpanError("repeated exponent vector");

  std::size_t origin = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::all_of(raw.points[i].begin(), raw.points[i].end(), [](const Rational& q) { return q == 0; })) {
      origin = i;
      break;
    }
  }
  NormalizedSystem out;
  out.shift = RatVector(static_cast<std::size_t>(n), 0);
  if (origin == m) {
    origin = 0;
    out.shift = raw.points[0];
  }
  std::vector<RatVector> moved(m);
  for (std::size_t i = 0; i < m; ++i) {
    moved[i].resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) moved[i][c] = raw.points[i][c] - out.shift[c];
  }

  // greedy independent set, scanning from the end
  std::vector<std::size_t> chosen;
  std::vector<RatVector> basis;
  for (std::size_t idx = m; idx-- > 0 && static_cast<int>(chosen.size()) < n;) {
    if (idx == origin) continue;
    basis.push_back(moved[idx]);
    if (static_cast<int>(rank(Matrix::from_rows(basis))) == static_cast<int>(basis.size())) {
      chosen.push_back(idx);
    } else {
      basis.pop_back();
    }
  }
  if (static_cast<int>(chosen.size()) < n)
    throw SpanError("support does not affinely span R^n; no non-degenerate solutions exist");
  std::sort(chosen.begin(), chosen.end());

  out.permutation.push_back(origin);
  for (std::size_t i = 0; i < m; ++i) {
    if (i == origin || std::binary_search(chosen.begin(), chosen.end(), i)) continue;
    out.permutation.push_back(i);
  }
  out.permutation.insert(out.permutation.end(), chosen.begin(), chosen.end());

  out.support.n = n;
  for (std::size_t idx : out.permutation) out.support.points.push_back(moved[idx]);
  out.system.n = system.n;
  out.system.support = out.support;
  out.system.coeffs = system.coeffs.select_cols(out.permutation);
  return out;
}

NormalizedSystem normalize_support(const FewnomialSystem& system) {
  return normalize_support(system.support, system);
}

namespace {

using Simplex = std::vector<RatVector>;

// Coordinates on which the affine hull of pts projects injectively.
std::vector<std::size_t> chart(const std::vector<RatVector>& pts, int d) {
  std::vector<RatVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVector v(pts[i].size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = pts[i][c] - pts[0][c];
    diffs.push_back(std::move(v));
  }
  // pivot columns of the difference matrix are independent coordinates
  auto piv = rref(Matrix::from_rows(diffs)).pivots;
  piv.resize(static_cast<std::size_t>(d));
  return piv;
}

RatVector centroid(const std::vector<RatVector>& pts) {
  RatVector c(pts[0].size(), 0);
  for (const auto& p : pts)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (auto& x : c) x /= static_cast<long>(pts.size());
  return c;
}

int orientation(const std::vector<RatVector>& proj, const std::vector<std::size_t>& facet, const RatVector& p) {
  const std::size_t d = p.size();
  const RatVector& base = proj[facet[0]];
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const RatVector& q = r + 1 < d ? proj[facet[r + 1]] : p;
    for (std::size_t c = 0; c < d; ++c) m(r, c) = q[c] - base[c];
  }
  return sgn(determinant(m));
}

// Triangulates conv(pts), whose affine dimension is d, by coning from the
// centroid over recursively triangulated facets.
std::vector<Simplex> triangulate(const std::vector<RatVector>& pts, int d) {
  if (d == 0) return {Simplex{pts[0]}};
  const auto coords = chart(pts, d);
  std::vector<RatVector> proj;
  for (const auto& p : pts) {
    RatVector v;
    for (auto c : coords) v.push_back(p[c]);
    proj.push_back(std::move(v));
  }
  const std::size_t m = pts.size();
  std::set<std::vector<std::size_t>> facets;
  // choose d affinely independent points spanning a candidate facet hyperplane
  std::vector<bool> mask(m, false);
  std::fill(mask.end() - d, mask.end(), true);
  do {
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) sel.push_back(i);
    std::vector<RatVector> selp;
    for (auto i : sel) selp.push_back(proj[i]);
    if (affine_dimension(selp) != d - 1) continue;
    int side = 0;
    bool ok = true;
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < m && ok; ++i) {
      int o = orientation(proj, sel, proj[i]);
      if (o == 0) {
        on.push_back(i);
      } else if (side == 0) {
        side = o;
      } else if (o != side) {
        ok = false;
      }
    }
    if (ok) facets.insert(on);
  } while (std::next_permutation(mask.begin(), mask.end()));

  const RatVector c = centroid(pts);
  std::vector<Simplex> out;
  for (const auto& f : facets) {
    std::vector<RatVector> fp;
    for (auto i : f) fp.push_back(pts[i]);
    for (auto& s : triangulate(fp, d - 1)) {
      s.push_back(c);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

Rational kouchnirenko_bound(const Support& w) {
  const int n = w.n;
  if (affine_dimension(w.points) != n) throw SpanError("support does not affinely span R^n");
  Rational total = 0;
  for (const auto& s : triangulate(w.points, n)) {
    Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = s[r][c] - s[n][c];
    total += abs(determinant(m));
  }
  return total;
}

RealVector eval_system(const FewnomialSystem& sys, const RealVector& z, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits);
  for (const auto& x : z)
    if (x <= 0) throw DomainError("evaluation point must lie in the positive orthant");
  RealVector logs;
  for (const auto& x : z) logs.push_back(boost::multiprecision::log(at_precision(x)));
  RealVector monos;
  for (const auto& w : sys.support.points) {
    Real s = 0;
    for (std::size_t c = 0; c < w.size(); ++c)
      if (w[c] != 0) s += to_real(w[c]) * logs[c];
    monos.push_back(boost::multiprecision::exp(s));
  }
  RealVector out;
  for (std::size_t i = 0; i < sys.coeffs.rows(); ++i) {
    Real acc = 0;
    for (std::size_t j = 0; j < monos.size(); ++j)
      if (sys.coeffs(i, j) != 0) acc += to_real(sys.coeffs(i, j)) * monos[j];
    out.push_back(acc);
  }
  return out;
}

}  // namespace fnx

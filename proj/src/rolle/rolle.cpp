#include "fnx/rolle/rolle.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fnx/bounds/bounds.hpp"
#include "fnx/core/errors.hpp"
#include "fnx/core/rng.hpp"

namespace fnx {

LogSystem LogSystem::from_gale(const GaleSystem& g) { return {g.dual.A, g.dual.B}; }

LinearForm LogSystem::form(std::size_t i) const {
  LinearForm f{B(i, 0), RatVector(static_cast<std::size_t>(k()))};
  for (int l = 0; l < k(); ++l) f.c[l] = B(i, l + 1);
  return f;
}

std::vector<LinearForm> LogSystem::forms() const {
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(form(i));
  return out;
}

namespace {

Integer ipow(long base, long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), Integer(base).get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

void check_shape(const LogSystem& l) {
  if (l.A.rows() != l.B.rows() || l.B.cols() != l.A.cols() + 1 || l.A.cols() == 0)
    throw DimensionError("log system needs A (m x k) and B (m x (k+1))");
}

RealVector form_values(const LogSystem& l, const RealVector& y) {
  if (static_cast<int>(y.size()) != l.k()) throw DimensionError("point has the wrong dimension");
  RealVector p;
  for (std::size_t i = 0; i < l.size(); ++i) {
    p.push_back(l.form(i).eval(y));
    if (p.back() <= 0) throw DomainError("point lies outside delta");
  }
  return p;
}

void for_each_subset(std::size_t m, std::size_t j, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (j > m) return;
  std::vector<std::size_t> idx(j);
  for (std::size_t i = 0; i < j; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = j;
    while (i > 0 && idx[i - 1] == m - j + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t t = i; t < j; ++t) idx[t] = idx[t - 1] + 1;
  }
}

Real real_det(std::vector<RealVector> m) {
  const std::size_t k = m.size();
  Real det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0) return Real(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      Real f = m[r][c] / m[c][c];
      for (std::size_t t = c; t < k; ++t) m[r][t] -= f * m[c][t];
    }
  }
  return det;
}

// cofactor expansion along the first row; k <= 3 here
SparsePoly poly_det(const std::vector<std::vector<SparsePoly>>& m, int vars) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  SparsePoly acc(vars);
  for (std::size_t c = 0; c < k; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<SparsePoly>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<SparsePoly> row;
      for (std::size_t t = 0; t < k; ++t)
        if (t != c) row.push_back(m[r][t]);
      minor.push_back(std::move(row));
    }
    SparsePoly term = m[0][c] * poly_det(minor, vars);
    if (c % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

SparsePoly form_product(const LogSystem& l, unsigned skip_mask) {
  SparsePoly acc = SparsePoly::constant(l.k(), 1);
  for (std::size_t i = 0; i < l.size(); ++i)
    if (!(skip_mask >> i & 1u)) acc = acc * SparsePoly::linear(l.form(i).c0, l.form(i).c);
  return acc;
}

// One Jacobian row: psi rows are sum_i a_i b_i / p_i; Gamma_m rows, after
// pulling out 1/P^{e_m}, are grad F_m - e_m F_m sum_i b_i / p_i.
struct TowerRow {
  bool psi = true;
  std::size_t column = 0;        // psi_j: column of A
  std::vector<SparsePoly> grad;  // Gamma rows
  SparsePoly alpha;              // Gamma rows: -e_m F_m
};

// F_j = P * det(rows), expanded by multilinearity so that every term has a
// product of distinct p_i in the denominator
SparsePoly tower_level(const LogSystem& l, const Matrix& a, const std::vector<TowerRow>& rows) {
  const int k = l.k();
  const std::size_t m = l.size();
  std::vector<std::vector<SparsePoly>> bvec(m);
  for (std::size_t i = 0; i < m; ++i)
    for (int c = 0; c < k; ++c) bvec[i].push_back(SparsePoly::constant(k, l.B(i, c + 1)));

  std::map<unsigned, SparsePoly> by_mask;
  std::vector<std::vector<SparsePoly>> mat(rows.size());
  std::function<void(std::size_t, unsigned, const SparsePoly&)> rec = [&](std::size_t r, unsigned mask,
                                                                          const SparsePoly& coef) {
    if (coef.is_zero()) return;
    if (r == rows.size()) {
      SparsePoly d = poly_det(mat, k);
      if (d.is_zero()) return;
      auto it = by_mask.find(mask);
      if (it == by_mask.end()) it = by_mask.emplace(mask, SparsePoly(k)).first;
      it->second += coef * d;
      return;
    }
    const TowerRow& row = rows[r];
    if (!row.psi) {
      mat[r] = row.grad;
      rec(r + 1, mask, coef);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1u) continue;
      SparsePoly c = row.psi ? a(i, row.column) * coef : coef * row.alpha;
      if (c.is_zero()) continue;
      mat[r] = bvec[i];
      rec(r + 1, mask | (1u << i), c);
    }
  };
  rec(0, 0, SparsePoly::constant(k, 1));
  SparsePoly out(k);
  for (const auto& [mask, poly] : by_mask) out += poly * form_product(l, mask);
  return out;
}

std::vector<SparsePoly> compute_tower(const LogSystem& l, const Matrix& a) {
  const int k = l.k();
  std::vector<SparsePoly> f(static_cast<std::size_t>(k));
  for (int j = k; j >= 1; --j) {
    std::vector<TowerRow> rows;
    for (int r = 0; r < j; ++r) rows.push_back({true, static_cast<std::size_t>(r), {}, {}});
    for (int mm = j + 1; mm <= k; ++mm) {
      TowerRow row;
      row.psi = false;
      const SparsePoly& fm = f[mm - 1];
      for (int c = 0; c < k; ++c) row.grad.push_back(fm.derivative(c));
      long e = 1L << (k - mm);
      row.alpha = Rational(-e) * fm;
      rows.push_back(std::move(row));
    }
    f[j - 1] = tower_level(l, a, rows);
  }
  return f;
}

}  // namespace

PsiValues psi_eval(const LogSystem& l, const RealVector& y_in) {
  check_shape(l);
  const RealVector y = at_precision(y_in);
  const RealVector p = form_values(l, y);
  const int k = l.k();
  PsiValues out;
  out.psi.assign(k, Real(0));
  out.gradient.assign(k, RealVector(k, Real(0)));
  for (std::size_t i = 0; i < l.size(); ++i) {
    Real lg = log(p[i]);
    for (int j = 0; j < k; ++j) {
      if (l.A(i, j) == 0) continue;
      Real a = to_real(l.A(i, j));
      out.psi[j] += a * lg;
      for (int c = 0; c < k; ++c) out.gradient[j][c] += a * to_real(l.B(i, c + 1)) / p[i];
    }
  }
  return out;
}

Real gamma_k_closed_form(const LogSystem& l, const RealVector& y_in) {
  check_shape(l);
  const RealVector y = at_precision(y_in);
  const RealVector p = form_values(l, y);
  const std::size_t k = static_cast<std::size_t>(l.k());
  std::vector<std::size_t> lin(k);
  for (std::size_t c = 0; c < k; ++c) lin[c] = c + 1;
  const Matrix blin = l.B.select_cols(lin);
  Real acc = 0;
  for_each_subset(l.size(), k, [&](const std::vector<std::size_t>& s) {
    Rational ai = determinant(l.A.select_rows(s));
    if (ai == 0) return;
    Rational bi = determinant(blin.select_rows(s));
    if (bi == 0) return;
    Real denom = 1;
    for (auto i : s) denom *= p[i];
    acc += to_real(ai * bi) / denom;
  });
  return acc;
}

CauchyBinetReport cauchy_binet_check(const RatVector& c, const Matrix& d, const Matrix& e) {
  const std::size_t m = c.size(), k = d.cols();
  if (d.rows() != m || e.rows() != m || e.cols() != k) throw DimensionError("Cauchy-Binet shapes disagree");
  if (m < k) throw DimensionError("Cauchy-Binet needs m >= k");
  Matrix g(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t i = 0; i < m; ++i) g(j, t) += c[i] * d(i, j) * e(i, t);
  CauchyBinetReport rep;
  rep.lhs = determinant(g);
  rep.rhs = 0;
  for_each_subset(m, k, [&](const std::vector<std::size_t>& s) {
    Rational ci = 1;
    for (auto i : s) ci *= c[i];
    rep.rhs += ci * determinant(d.select_rows(s)) * determinant(e.select_rows(s));
  });
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

Real GammaTower::gamma(int j, const LogSystem& l, const RealVector& y) const {
  const RealVector p = form_values(l, at_precision(y));
  Real prod = 1;
  for (const auto& v : p) prod *= v;
  return F[j - 1].eval(at_precision(y)) / real_pow(prod, Rational(denominator_power[j - 1]));
}

GammaTower gamma_tower(const LogSystem& l, bool perturb, std::uint64_t seed) {
  check_shape(l);
  const int k = l.k(), n = l.n();
  if (k > kTowerMaxK || n > kTowerMaxN) throw SizeError("symbolic tower is limited to k <= 3, n <= 4");
  if (n < 1) throw DimensionError("log system needs n >= 1");
  GammaTower t;
  t.n = n;
  t.k = k;
  t.A = l.A;
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    t.F = compute_tower(l, t.A);
    bool vanished = std::any_of(t.F.begin(), t.F.end(), [](const SparsePoly& f) { return f.is_zero(); });
    if (!vanished) break;
    if (!perturb || attempt >= 5) throw SingularError("some F_j vanishes identically; the exponents are not generic");
    // generic exponents: seeded shift of size 1e-7 on every entry
    Matrix a = l.A;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        Rational r = rng.rational(1000, 1) / 1000;
        a(i, j) += r * Rational(1, 10000000) * std::max(Rational(1), abs(a(i, j)));
      }
    t.A = a;
    t.perturbed = true;
    t.notes = "exponents perturbed by 1e-7 after F_j vanished (seed " + std::to_string(seed) + ", attempt " +
              std::to_string(attempt + 1) + ")";
  }
  for (int j = 1; j <= k; ++j) {
    t.degree.push_back(t.F[j - 1].total_degree());
    t.min_degree.push_back(t.F[j - 1].min_total_degree());
    t.denominator_power.push_back(1L << (k - j));
    if (t.degree.back() != n * (1 << (k - j))) t.generic_degrees = false;
    if (t.degree.back() > n * (1 << (k - j))) throw std::logic_error("F_j exceeds its degree bound");
  }
  return t;
}

ChainReport kr_chain_bound(const LogSystem& l, const FaceLattice& faces, long n, long k, bool section4,
                           std::size_t phi1_index) {
  check_shape(l);
  if (l.k() != k || faces.k != k) throw DimensionError("k disagrees between the system and the faces");
  if (static_cast<long>(l.size()) != n + k) throw DimensionError("expected n + k forms");
  ChainReport r;
  r.n = n;
  r.k = k;
  r.section4 = section4;
  const auto& phi = faces.phi;
  std::optional<SplitCounts> split;
  if (section4) split = split_face_counts(faces, phi1_index);
  for (long j = 1; j <= k; ++j) {
    const long d = k - j;
    Integer bezout = two_pow_choose2(d) * ipow(n, d);
    Integer twice;  // bound on 2 flat(C_j)
    if (!section4) {
      // a PL 1-submanifold of the boundary has no more edges than vertices
      long m = phi[d];
      if (d == 1) m = std::min(m, phi[0]);
      r.faces_used.push_back(m);
      twice = bezout * m;
    } else if (d == 0) {
      r.faces_used.push_back(phi[0]);
      twice = phi[0];
    } else {
      Integer slab = two_pow_choose2(d) * (ipow(n, d) - ipow(n - 1, d));
      r.faces_used.push_back(phi[d]);
      twice = bezout * split->nonlinear[d] + slab * split->linear[d];
    }
    r.flat_bounds.push_back(twice / 2);
  }
  if (section4) {
    r.vertex_bound = two_pow_choose2(k) * (ipow(n, k) - ipow(n - 1, k));
  } else {
    r.vertex_bound = two_pow_choose2(k) * ipow(n, k);
  }
  r.total = r.vertex_bound;
  for (const auto& f : r.flat_bounds) r.total += f;
  if (section4) {
    r.kappa = r.total / 2;
    r.notes = "cone case: linear faces use the slab count n^d - (n-1)^d";
  }
  return r;
}

namespace {

Integer generic_chain_formula(long n, long k) {
  if (k == 2 && n >= 2) return bound_k2(n).integer_cap;
  if (k == 3 && n >= 2) return bound_k3(n).integer_cap;
  Integer total = two_pow_choose2(k) * ipow(n, k);
  for (long j = 1; j <= k; ++j)
    total += two_pow_choose2(k - j) * ipow(n, k - j) * binomial(n + k + 1, j) / 2;
  return total;
}

Integer cone_formula(long n, long k) {
  if (k == 2) return Integer((5 * n + 1) / 2);
  if (k == 3) return floor(Rational(29 * n * n - 16 * n + 9) / 2);
  Integer total = two_pow_choose2(k) * (ipow(n, k) - ipow(n - 1, k));
  for (long j = 1; j <= k; ++j)
    total += two_pow_choose2(k - j) * ipow(n, k - j) * binomial(n + k + 1, j) / 2;
  return total / 2;
}

}  // namespace

RolleCertificate rolle_certificate(const LogSystem& l, bool section4, std::size_t phi1_index, std::uint64_t seed) {
  check_shape(l);
  const long n = l.n(), k = l.k();
  RolleCertificate c;
  HPolyhedron delta = build_delta(static_cast<int>(k), distinct_forms(l.forms()));
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    try {
      c.faces = enumerate_faces(delta);
      break;
    } catch (const DegeneracyError&) {
      if (attempt >= 10) throw;
      delta = perturb_constants(delta, rng);
      c.faces_perturbed = true;
    }
  }
  if (c.faces_perturbed) c.notes += "face lattice taken after perturbing constant terms; ";
  c.chain = kr_chain_bound(l, c.faces, n, k, section4, phi1_index);
  if (section4) {
    c.generic_bound = cone_formula(n, k);
    c.chain_within_generic = *c.chain.kappa <= c.generic_bound;
  } else {
    c.generic_bound = generic_chain_formula(n, k);
    c.chain_within_generic = c.chain.total <= c.generic_bound;
  }
  if (k <= kTowerMaxK && n <= kTowerMaxN) {
    c.tower = gamma_tower(l, true, seed);
    for (long j = 1; j <= k; ++j) {
      long hi = n << (k - j), lo = (n - 1) << (k - j);
      if (c.tower->degree[j - 1] > hi) c.degrees_ok = false;
      if (section4 && c.tower->min_degree[j - 1] < lo) c.degrees_ok = false;
    }
    if (c.tower->perturbed) c.notes += c.tower->notes + "; ";
  } else {
    c.notes += "symbolic tower skipped beyond k <= 3, n <= 4; ";
  }

  PrecisionGuard guard(128);
  const HPolyhedron exact = build_delta(static_cast<int>(k), l.forms());
  Real worst = 0;
  for (int s = 0; s < 20; ++s) {
    RatVector yq = random_interior_point(exact, rng);
    RealVector y;
    for (const auto& x : yq) y.push_back(to_real(x));
    Real closed = gamma_k_closed_form(l, y);
    Real jac = real_det(psi_eval(l, y).gradient);
    Real scale = std::max(abs(closed), abs(jac));
    if (scale > 0) worst = std::max(worst, Real(abs(closed - jac) / scale));
    ++c.sample_points;
  }
  c.closed_form_error = worst;
  return c;
}

Json rolle_certificate_to_json(const RolleCertificate& c) {
  Json j;
  j["n"] = c.chain.n;
  j["k"] = c.chain.k;
  j["section4"] = c.chain.section4;
  j["phi"] = c.faces.phi;
  j["bounded"] = c.faces.bounded;
  j["faces_perturbed"] = c.faces_perturbed;
  j["faces_used"] = c.chain.faces_used;
  Json flats = Json::array();
  for (const auto& f : c.chain.flat_bounds) flats.push_back(f.get_str());
  j["flat_bounds"] = flats;
  j["vertex_bound"] = c.chain.vertex_bound.get_str();
  j["total"] = c.chain.total.get_str();
  if (c.chain.kappa) j["kappa"] = c.chain.kappa->get_str();
  j["generic_bound"] = c.generic_bound.get_str();
  j["chain_within_generic"] = c.chain_within_generic;
  if (c.tower) {
    j["degrees"] = c.tower->degree;
    j["min_degrees"] = c.tower->min_degree;
    j["generic_degrees"] = c.tower->generic_degrees;
    j["tower_perturbed"] = c.tower->perturbed;
  }
  j["degrees_ok"] = c.degrees_ok;
  j["closed_form_error"] = format_real(c.closed_form_error, 3);
  j["sample_points"] = c.sample_points;
  j["notes"] = c.notes;
  return j;
}

}  // namespace fnx

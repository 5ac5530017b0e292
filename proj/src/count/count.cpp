#include "fnx/count/count.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fnx/core/errors.hpp"
#include "fnx/core/rng.hpp"
#include "fnx/count/bivariate.hpp"
#include "fnx/count/sturm.hpp"

namespace fnx {

std::string method_name(CountMethod m) {
  switch (m) {
    case CountMethod::SturmExact: return "sturm-exact";
    case CountMethod::ResultantExact: return "resultant-exact";
    case CountMethod::NewtonNumeric: return "newton-numeric";
  }
  return "unknown";
}

namespace {

const Rational& output_width() {
  static const Rational w = Rational(1) / pow(Rational(2), 160);
  return w;
}

UPoly to_upoly(const SparsePoly& f) {
  RatVector c;
  for (const auto& [e, v] : f.terms()) {
    std::size_t d = static_cast<std::size_t>(e[0]);
    if (c.size() <= d) c.resize(d + 1);
    c[d] = v;
  }
  return UPoly(std::move(c));
}

SparsePoly cleared(SparsePoly f) {
  f.clear_laurent();
  return f;
}

bool is_constant(const SparsePoly& f) {
  if (f.is_zero()) return true;
  if (f.size() != 1) return false;
  const auto& e = f.terms().begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool is_monomial(const SparsePoly& f) { return f.size() == 1; }

SparsePoly perturb_coefficients(const SparsePoly& f, Rng& rng) {
  SparsePoly out(f.vars(), f.denom_clear());
  for (const auto& [e, c] : f.terms()) {
    Rational r = rng.rational(1000, 1) / 1000;
    out.add_term(e, c * (1 + kCountPerturbation * r));
  }
  return out;
}

Rational min_gap(const std::vector<RealRoot>& roots, const Rational& fallback) {
  Rational gap = fallback;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) gap = std::min(gap, Rational(roots[i + 1].lo - roots[i].hi));
  return gap;
}

struct Interval1d {
  std::optional<Rational> lo, hi;
  bool empty = false;
};

Interval1d region_interval(const std::vector<LinearForm>& forms) {
  Interval1d iv;
  for (const auto& f : forms) {
    const Rational& a = f.c[0];
    if (a == 0) {
      if (f.c0 <= 0) iv.empty = true;
      continue;
    }
    Rational r = -f.c0 / a;
    if (a > 0) {
      if (!iv.lo || r > *iv.lo) iv.lo = r;
    } else {
      if (!iv.hi || r < *iv.hi) iv.hi = r;
    }
  }
  if (iv.lo && iv.hi && *iv.lo >= *iv.hi) iv.empty = true;
  return iv;
}

}  // namespace

CountReport count_in_region_1d(const SparsePoly& f_in, const std::vector<LinearForm>& forms) {
  if (f_in.is_zero()) throw ZeroPolyError("counting roots of the zero polynomial");
  CountReport rep;
  rep.method = CountMethod::SturmExact;
  rep.certified = true;
  rep.degeneracy_margin = 0;
  const UPoly p = to_upoly(cleared(f_in));
  const Interval1d iv = region_interval(forms);
  if (iv.empty || p.degree() <= 0) {
    rep.notes = iv.empty ? "empty region" : "no roots";
    return rep;
  }
  rep.count = sturm_count(p, iv.lo, iv.hi);
  for (const auto* end : {&iv.lo, &iv.hi})
    if (*end && p.eval(**end) == 0) ++rep.boundary_excluded;

  auto roots = isolate_real_roots(p);
  rep.degeneracy_margin = min_gap(roots, 2 * cauchy_root_bound(squarefree_part(p)));
  const UPoly repeated = gcd(p, p.derivative());
  PrecisionGuard g(default_precision_bits());
  for (auto& r : roots) {
    // inside the open interval?
    bool inside = true;
    for (const auto& form : forms) {
      UPoly lf(RatVector{form.c0, form.c[0]});
      if (sign_at_root(lf, r) <= 0) inside = false;
    }
    if (!inside) continue;
    if (repeated.degree() > 0 && vanishes_at_root(repeated, r)) rep.certified = false;
    r.refine_to(output_width());
    Real x = r.approx();
    rep.solutions.push_back({{x}, boost::multiprecision::abs(f_in.eval(RealVector{x}))});
  }
  if (!rep.certified) rep.notes = "multiple root inside the region";
  if (rep.boundary_excluded > 0) {
    rep.certified = false;
    rep.notes += (rep.notes.empty() ? "" : "; ") + std::string("root on the region boundary excluded");
  }
  return rep;
}

CountReport count_positive_1d(const SparsePoly& f) { return count_in_region_1d(f, {coordinate_form(1, 0)}); }

namespace {

struct ShearOutcome {
  long count = 0;
  long boundary = 0;
  bool all_simple = true;
  std::vector<RealVector> points;
  Rational margin;
};

// u-coordinates of the pairwise intersections of the form lines.
std::vector<Rational> vertex_shadows(const std::vector<LinearForm>& forms, const Rational& t) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      const auto& a = forms[i];
      const auto& b = forms[j];
      Rational det = a.c[0] * b.c[1] - a.c[1] * b.c[0];
      if (det == 0) continue;
      // a.c x = -a.c0, b.c x = -b.c0
      Rational x = (-a.c0 * b.c[1] + b.c0 * a.c[1]) / det;
      Rational y = (-b.c0 * a.c[0] + a.c0 * b.c[0]) / det;
      Rational u = x + t * y;
      if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    }
  }
  return out;
}

std::optional<ShearOutcome> try_shear(const SparsePoly& f, const SparsePoly& g, const std::vector<LinearForm>& forms,
                                      const Rational& t) {
  const BiPoly F = shear(f, t), G = shear(g, t);
  if (F.lc_y().degree() != 0 || G.lc_y().degree() != 0) return std::nullopt;
  ShearOutcome out;
  if (F.deg_y() < 1 || G.deg_y() < 1) return out;  // nonzero constant: no solutions
  const UPoly R = resultant_y(F, G);
  if (R.is_zero()) throw PositiveDimError("resultant vanishes identically: common curve component");
  if (R.degree() <= 0) return out;
  const auto sub = first_subresultant(F, G);
  const UPoly repeated = gcd(R, R.derivative());
  UPoly rest = squarefree_part(R);

  std::vector<RealRoot> roots;
  for (const auto& c : vertex_shadows(forms, t)) {
    if (rest.degree() > 0 && rest.eval(c) == 0) {
      roots.push_back({UPoly::linear_root(c), c, c, true});
      rest = exact_div(rest, UPoly::linear_root(c));
    }
  }
  for (auto& r : isolate_real_roots(rest)) roots.push_back(std::move(r));
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
  out.margin = min_gap(roots, 2 * cauchy_root_bound(squarefree_part(R)));

  auto simple_at = [&](const RealRoot& r) {
    return repeated.degree() <= 0 || !vanishes_at_root(repeated, r);
  };

  for (auto& r : roots) {
    if (!r.exact && vanishes_at_root(sub.s11, r)) return std::nullopt;
    if (r.exact) {
      const Rational& a = r.value();
      UPoly h = gcd(F.at_u(a), G.at_u(a));
      if (h.degree() <= 0) continue;
      // every point on this fiber is a simple solution iff the multiplicity
      // of a in R equals the number of distinct points
      int mult = 0;
      for (UPoly q = R; q.eval(a) == 0; q = exact_div(q, UPoly::linear_root(a))) ++mult;
      const bool fiber_simple = mult == squarefree_part(h).degree();
      for (auto& yr : isolate_real_roots(h)) {
        bool boundary = false, inside = true;
        for (const auto& form : forms) {
          UPoly lf(RatVector{form.c0 + form.c[0] * a, form.c[1] - form.c[0] * t});
          int s = sign_at_root(lf, yr);
          if (s == 0) boundary = true;
          if (s <= 0) inside = false;
        }
        if (boundary) {
          ++out.boundary;
          continue;
        }
        if (!inside) continue;
        ++out.count;
        if (!fiber_simple) out.all_simple = false;
        yr.refine_to(output_width());
        Real y = yr.approx();
        out.points.push_back({to_real(a) - to_real(t) * y, y});
      }
      continue;
    }
    const int s11_sign = sign_at_root(sub.s11, r);
    bool boundary = false, inside = true;
    const UPoly u = UPoly::monomial(1, 1);
    for (const auto& form : forms) {
      // s11 * form(u - t y, y) with y = -s10/s11
      UPoly lt = form.c0 * sub.s11 + form.c[0] * (u * sub.s11) - (form.c[1] - form.c[0] * t) * sub.s10;
      int s = sign_at_root(lt, r) * s11_sign;
      if (s == 0) boundary = true;
      if (s <= 0) inside = false;
    }
    if (boundary) {
      ++out.boundary;
      continue;
    }
    if (!inside) continue;
    ++out.count;
    if (!simple_at(r)) out.all_simple = false;
    r.refine_to(output_width());
    // exact at the interval midpoint: the subresultants can be large enough to
    // cancel badly in floating point
    const Rational a = r.exact ? r.lo : Rational((r.lo + r.hi) / 2);
    const Rational y = -sub.s10.eval(a) / sub.s11.eval(a);
    out.points.push_back({to_real(Rational(a - t * y)), to_real(y)});
  }
  return out;
}

const std::array<Rational, 12>& shear_sequence() {
  static const std::array<Rational, 12> seq = {Rational(1),     Rational(-1),    Rational(2),     Rational(-2),
                                               Rational(1, 2),  Rational(3),     Rational(-1, 2), Rational(-3),
                                               Rational(2, 3),  Rational(5),     Rational(-3, 2), Rational(7, 3)};
  return seq;
}

CountReport count_region_2d_once(const SparsePoly& f_in, const SparsePoly& g_in, const std::vector<LinearForm>& forms) {
  if (f_in.is_zero() || g_in.is_zero()) throw PositiveDimError("an equation vanishes identically");
  CountReport rep;
  rep.method = CountMethod::ResultantExact;
  rep.certified = true;
  if (is_constant(f_in) || is_constant(g_in) || is_monomial(f_in) || is_monomial(g_in)) {
    rep.notes = "an equation has no zeros in the torus";
    return rep;
  }
  const SparsePoly f = cleared(f_in), g = cleared(g_in);
  PrecisionGuard guard(default_precision_bits());
  for (const auto& t : shear_sequence()) {
    auto res = try_shear(f, g, forms, t);
    if (!res) continue;
    rep.count = res->count;
    rep.boundary_excluded = res->boundary;
    rep.certified = res->all_simple;
    rep.degeneracy_margin = res->margin;
    for (auto& p : res->points) {
      Real r = std::max(boost::multiprecision::abs(f_in.eval(p)), boost::multiprecision::abs(g_in.eval(p)));
      rep.solutions.push_back({p, r});
    }
    rep.notes = "shear t=" + to_string(t);
    if (rep.boundary_excluded > 0) rep.notes += "; solution on the region boundary excluded";
    return rep;
  }
  throw DegenerateError("no shear separates the solutions");
}

}  // namespace

CountReport count_in_region_2d(const SparsePoly& f, const SparsePoly& g, const std::vector<LinearForm>& forms,
                               std::uint64_t seed) {
  CountReport rep = count_region_2d_once(f, g, forms);
  const bool degenerate = !rep.certified;
  if (rep.boundary_excluded > 0) rep.certified = false;
  if (degenerate) {
    Rng rng(seed);
    CountReport p = count_region_2d_once(perturb_coefficients(f, rng), perturb_coefficients(g, rng), forms);
    rep.perturbed_count = p.count;
    rep.notes += "; multiple solution inside the region, perturbed count " + std::to_string(p.count);
  }
  return rep;
}

CountReport count_positive_2d(const SparsePoly& f, const SparsePoly& g, std::uint64_t seed) {
  return count_in_region_2d(f, g, {coordinate_form(2, 0), coordinate_form(2, 1)}, seed);
}

CountReport count_system_exact(const FewnomialSystem& sys, std::uint64_t seed) {
  if (sys.n > 2) throw SizeError("exact counting covers n <= 2");
  CountReport rep;
  long N = 1;
  if (sys.n == 1) {
    SparsePoly f = sys.polynomial(0);
    N = f.denom_clear();
    SparsePoly t(1);
    for (const auto& [e, c] : f.terms()) t.add_term(e, c);
    rep = count_positive_1d(t);
  } else {
    // both rows on the same support share the same denominator
    SparsePoly f = sys.polynomial(0), g = sys.polynomial(1);
    N = std::max(f.denom_clear(), g.denom_clear());
    if (f.denom_clear() != g.denom_clear()) throw std::logic_error("rows cleared by different denominators");
    SparsePoly tf(2), tg(2);
    for (const auto& [e, c] : f.terms()) tf.add_term(e, c);
    for (const auto& [e, c] : g.terms()) tg.add_term(e, c);
    rep = count_positive_2d(tf, tg, seed);
  }
  {
    PrecisionGuard guard(default_precision_bits());
    for (auto& s : rep.solutions) {
      for (auto& x : s.point) x = boost::multiprecision::pow(x, static_cast<int>(N));
      RealVector r = eval_system(sys, s.point, default_precision_bits());
      Real m = 0;
      for (auto& v : r) m = std::max(m, Real(boost::multiprecision::abs(v)));
      s.residual = m;
    }
  }
  return rep;
}

namespace {

double halton(std::uint64_t index, int base) {
  double f = 1, r = 0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
  }
  return r;
}

template <class T>
bool solve_linear(std::vector<std::vector<T>> a, std::vector<T>& b) {
  using std::abs;
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a[i][k]) > abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0) return false;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      T m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) b[k] -= a[k][j] * b[j];
    b[k] /= a[k][k];
  }
  return true;
}

// F_i(s) and dF_i/ds_l in log coordinates, plus the term magnitude scale.
template <class T>
void log_system(const std::vector<std::vector<T>>& c, const std::vector<std::vector<T>>& w, const std::vector<T>& s,
                std::vector<T>& F, std::vector<std::vector<T>>& J, std::vector<T>& scale) {
  using std::abs;
  using std::exp;
  const std::size_t n = s.size(), m = w.size();
  F.assign(n, T(0));
  scale.assign(n, T(0));
  J.assign(n, std::vector<T>(n, T(0)));
  for (std::size_t j = 0; j < m; ++j) {
    T e = 0;
    for (std::size_t l = 0; l < n; ++l) e += w[j][l] * s[l];
    T mono = exp(e);
    for (std::size_t i = 0; i < n; ++i) {
      T term = c[i][j] * mono;
      F[i] += term;
      scale[i] += abs(term);
      for (std::size_t l = 0; l < n; ++l) J[i][l] += term * w[j][l];
    }
  }
}

}  // namespace

CountReport newton_census(const FewnomialSystem& sys, int starts, std::uint64_t seed, double box) {
  CountReport rep;
  rep.method = CountMethod::NewtonNumeric;
  rep.certified = false;
  const std::size_t n = static_cast<std::size_t>(sys.n), m = sys.support.size();
  std::vector<std::vector<double>> cd(n, std::vector<double>(m)), wd(m, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) cd[i][j] = to_double(sys.coeffs(i, j));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < n; ++l) wd[j][l] = to_double(sys.support.points[j][l]);
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  const std::uint64_t offset = 1 + seed % 4096;

  std::vector<std::vector<double>> found;
  for (int st = 0; st < starts; ++st) {
    std::vector<double> s(n);
    for (std::size_t l = 0; l < n; ++l) s[l] = box * (2 * halton(offset + static_cast<std::uint64_t>(st), primes[l % 10]) - 1);
    std::vector<double> F, scale;
    std::vector<std::vector<double>> J;
    bool ok = false;
    for (int it = 0; it < 80; ++it) {
      log_system(cd, wd, s, F, J, scale);
      double res = 0;
      for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(F[i]) / std::max(scale[i], 1e-300));
      std::vector<double> step = F;
      if (!solve_linear(J, step)) break;
      double norm = 0;
      for (double v : step) norm = std::max(norm, std::abs(v));
      if (!std::isfinite(norm)) break;
      double lambda = 1;
      if (norm > 2) lambda = 2 / norm;
      // backtrack on the relative residual
      std::vector<double> trial(n), F2, scale2;
      std::vector<std::vector<double>> J2;
      for (int h = 0; h < 30; ++h) {
        for (std::size_t l = 0; l < n; ++l) trial[l] = s[l] - lambda * step[l];
        log_system(cd, wd, trial, F2, J2, scale2);
        double r2 = 0;
        for (std::size_t i = 0; i < n; ++i) r2 = std::max(r2, std::abs(F2[i]) / std::max(scale2[i], 1e-300));
        if (r2 < res || lambda < 1e-6) break;
        lambda /= 2;
      }
      s = trial;
      bool diverged = false;
      for (double v : s)
        if (!std::isfinite(v) || std::abs(v) > 60) diverged = true;
      if (diverged) break;
      if (norm * lambda < 1e-13) {
        ok = res < 1e-9;
        break;
      }
    }
    if (!ok) continue;
    bool dup = false;
    for (const auto& q : found) {
      double d = 0;
      for (std::size_t l = 0; l < n; ++l) d = std::max(d, std::abs(std::exp(s[l]) - std::exp(q[l])) / std::exp(q[l]));
      if (d < 1e-8) dup = true;
    }
    if (!dup) found.push_back(s);
  }

  // polish at working precision
  PrecisionGuard guard(default_precision_bits());
  std::vector<std::vector<Real>> cr(n, std::vector<Real>(m)), wr(m, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) cr[i][j] = to_real(sys.coeffs(i, j));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < n; ++l) wr[j][l] = to_real(sys.support.points[j][l]);
  std::sort(found.begin(), found.end());
  for (const auto& sd : found) {
    std::vector<Real> s(sd.begin(), sd.end()), F, scale;
    std::vector<std::vector<Real>> J;
    for (int it = 0; it < 8; ++it) {
      log_system(cr, wr, s, F, J, scale);
      std::vector<Real> step = F;
      if (!solve_linear(J, step)) break;
      for (std::size_t l = 0; l < n; ++l) s[l] -= step[l];
    }
    RealVector z;
    for (auto& v : s) z.push_back(boost::multiprecision::exp(v));
    RealVector r = eval_system(sys, z, default_precision_bits());
    Real mr = 0;
    for (auto& v : r) mr = std::max(mr, Real(boost::multiprecision::abs(v)));
    rep.solutions.push_back({z, mr});
  }
  rep.count = static_cast<long>(rep.solutions.size());
  rep.notes = "starts=" + std::to_string(starts) + " seed=" + std::to_string(seed);
  return rep;
}

}  // namespace fnx

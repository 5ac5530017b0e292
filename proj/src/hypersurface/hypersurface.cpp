#include "fnx/hypersurface/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fnx/core/errors.hpp"
#include "fnx/count/count.hpp"

namespace fnx {

Support HypersurfaceInput::support() const {
  Support s;
  s.n = n;
  s.points.push_back(RatVector(static_cast<std::size_t>(n), 0));
  for (const auto& v : a) s.points.push_back(v);
  for (int i = 0; i < n; ++i) {
    RatVector unit(static_cast<std::size_t>(n), 0);
    unit[i] = 1;
    s.points.push_back(unit);
  }
  return s;
}

SparsePoly HypersurfaceInput::polynomial() const {
  std::vector<std::pair<RatVector, Rational>> terms;
  const Support s = support();
  terms.emplace_back(s.points[0], e0);
  for (int j = 0; j < k(); ++j) terms.emplace_back(a[j], c[j]);
  for (int i = 0; i < n; ++i) terms.emplace_back(s.points[1 + k() + i], e[i]);
  return SparsePoly::from_rational_terms(n, terms);
}

void validate(const HypersurfaceInput& h) {
  if (h.n < 1) throw FormError("need at least one variable");
  if (static_cast<int>(h.e.size()) != h.n) throw FormError("need one sign per variable");
  for (const auto& s : h.e)
    if (s != 1 && s != -1) throw FormError("coordinate coefficients must be +1 or -1");
  if (h.e0 == 0) throw FormError("the constant term must be nonzero");
  if (h.k() < 1) throw FormError("need at least one monomial besides the coordinates and the constant");
  if (h.c.size() != h.a.size()) throw FormError("one coefficient per exponent vector");
  const Support s = h.support();
  for (int j = 0; j < h.k(); ++j) {
    if (static_cast<int>(h.a[j].size()) != h.n) throw FormError("exponent vector has the wrong length");
    if (h.c[j] == 0) throw FormError("coefficients c_j must be nonzero");
  }
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = i + 1; j < s.points.size(); ++j)
      if (s.points[i] == s.points[j]) throw FormError("repeated exponent vector in the support");
}

namespace {

// exact q-th root of a nonnegative rational, when it exists
std::optional<Rational> rational_root(const Rational& r, unsigned long q) {
  if (q == 1) return r;
  Integer num, den;
  if (mpz_root(num.get_mpz_t(), r.get_num().get_mpz_t(), q) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), r.get_den().get_mpz_t(), q) == 0) return std::nullopt;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::optional<Rational> rational_power(const Rational& base, const Rational& exponent) {
  auto root = rational_root(base, exponent.get_den().get_ui());
  if (!root) return std::nullopt;
  return pow(*root, exponent.get_num().get_si());
}

}  // namespace

NormalForm normal_form(const SparsePoly& f) {
  const int n = f.vars();
  const long den = f.denom_clear();
  HypersurfaceInput h;
  h.n = n;
  h.e.assign(static_cast<std::size_t>(n), 0);
  RatVector coord(static_cast<std::size_t>(n), 0);
  bool has_const = false;
  std::vector<std::pair<RatVector, Rational>> others;
  for (const auto& [ex, cf] : f.terms()) {
    RatVector q(static_cast<std::size_t>(n));
    int unit = -1, nonzero = 0;
    for (int i = 0; i < n; ++i) {
      q[i] = Rational(ex[i], den);
      q[i].canonicalize();
      if (q[i] != 0) {
        ++nonzero;
        if (q[i] == 1) unit = i;
      }
    }
    if (nonzero == 0) {
      has_const = true;
      h.e0 = cf;
    } else if (nonzero == 1 && unit >= 0) {
      coord[unit] = cf;
    } else {
      others.emplace_back(q, cf);
    }
  }
  if (!has_const) throw FormError("normal form needs a constant term");
  NormalForm out;
  out.scale.assign(static_cast<std::size_t>(n), 1);
  for (int i = 0; i < n; ++i) {
    if (coord[i] == 0) throw FormError("normal form needs every coordinate monomial z_i");
    out.scale[i] = 1 / abs(coord[i]);
    h.e[i] = coord[i] > 0 ? 1 : -1;
  }
  for (auto& [q, cf] : others) {
    Rational v = cf;
    for (int i = 0; i < n; ++i) {
      if (q[i] == 0) continue;
      auto factor = rational_power(out.scale[i], q[i]);
      if (!factor) throw FormError("rescaling would make a coefficient irrational");
      v *= *factor;
    }
    h.a.push_back(q);
    h.c.push_back(v);
  }
  validate(h);
  out.input = h;
  return out;
}

FewnomialSystem critical_system(const HypersurfaceInput& h) {
  validate(h);
  const int n = h.n, k = h.k();
  FewnomialSystem sys;
  sys.n = n;
  sys.support = h.support();
  sys.coeffs = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n + k + 1));
  sys.coeffs(0, 0) = h.e0;
  for (int j = 0; j < k; ++j) sys.coeffs(0, 1 + j) = h.c[j];
  for (int i = 0; i < n; ++i) sys.coeffs(0, 1 + k + i) = h.e[i];
  // toric derivatives z_v df/dz_v keep the support
  for (int v = 1; v < n; ++v) {
    for (int j = 0; j < k; ++j) sys.coeffs(v, 1 + j) = h.c[j] * h.a[j][v];
    sys.coeffs(v, 1 + k + v) = h.e[v];
  }
  return sys;
}

GaleSystem component_gale_system(const HypersurfaceInput& h) {
  validate(h);
  const int n = h.n, k = h.k();
  DiagonalForm d;
  d.n = n;
  d.k = k;
  d.p.assign(static_cast<std::size_t>(n), LinearForm{0, RatVector(static_cast<std::size_t>(k), 0)});
  // e_v z_v + sum_l c_l a_{l,v} y_l = 0 for v >= 2
  for (int v = 1; v < n; ++v)
    for (int l = 0; l < k; ++l) d.p[v].c[l] = -h.e[v] * h.c[l] * h.a[l][v];
  // e_1 z_1 + sum_{v>=2} e_v z_v + sum_l c_l y_l + e0 = 0
  LinearForm rest{h.e0, h.c};
  for (int v = 1; v < n; ++v) {
    rest.c0 += h.e[v] * d.p[v].c0;
    for (int l = 0; l < k; ++l) rest.c[l] += h.e[v] * d.p[v].c[l];
  }
  d.p[0].c0 = -h.e[0] * rest.c0;
  for (int l = 0; l < k; ++l) d.p[0].c[l] = -h.e[0] * rest.c[l];
  d.ordering.resize(static_cast<std::size_t>(n + k + 1));
  std::iota(d.ordering.begin(), d.ordering.end(), 0);

  Matrix a(static_cast<std::size_t>(n + k), static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = h.a[j][i];
  for (int j = 0; j < k; ++j) a(n + j, j) = -1;
  return build_gale_system(d, a);
}

KappaCertificate kappa_certificate(const HypersurfaceInput& h, std::uint64_t seed) {
  validate(h);
  const long n = h.n, k = h.k();
  if (k > 3) throw SizeError("kappa certificate covers k <= 3");
  KappaCertificate c;
  c.n = n;
  c.k = k;
  c.generic = kappa_bounds(n, k);
  c.best_generic = best_kappa_cap(n, k);
  if (k == 1) {
    c.instance_bound = 1;
    c.notes = "k = 1: at most one compact component";
    return c;
  }
  GaleSystem g = component_gale_system(h);
  HPolyhedron delta;
  try {
    delta = build_delta(static_cast<int>(k), distinct_forms(g.delta));
  } catch (const EmptyError&) {
    c.empty_delta = true;
    c.instance_bound = 0;
    c.notes = "delta is empty: no critical points";
    return c;
  }
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    try {
      c.faces = enumerate_faces(delta);
      break;
    } catch (const DegeneracyError&) {
      if (attempt >= 10) throw;
      delta = perturb_constants(delta, rng);
      c.notes = "p_1 constant perturbed for a simple polyhedron; ";
    }
  }
  LogSystem l = LogSystem::from_gale(g);
  c.chain = kr_chain_bound(l, *c.faces, n, k, true, 0);
  c.instance_bound = *c.chain->kappa;
  return c;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

long grid_compact_components(const SparsePoly& f, long resolution, int box_exponent) {
  if (f.vars() != 2) throw DimensionError("grid counting needs two variables");
  if (resolution < 4) throw RangeError("grid resolution must be at least 4");
  const long m = resolution + 1;
  const double half = box_exponent * std::log(10.0);
  std::vector<double> u(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) u[i] = -half + 2 * half * static_cast<double>(i) / static_cast<double>(resolution);
  // f = sum_t c_t exp(e_t1 u1) exp(e_t2 u2): per-axis tables
  const double den = static_cast<double>(f.denom_clear());
  std::vector<double> coef;
  std::vector<std::vector<double>> ex1, ex2;
  for (const auto& [e, cf] : f.terms()) {
    coef.push_back(to_double(cf));
    std::vector<double> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) {
      a[i] = std::exp(e[0] / den * u[i]);
      b[i] = std::exp(e[1] / den * u[i]);
    }
    ex1.push_back(std::move(a));
    ex2.push_back(std::move(b));
  }
  std::vector<signed char> sign(static_cast<std::size_t>(m * m));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      double v = 0;
      for (std::size_t t = 0; t < coef.size(); ++t) v += coef[t] * ex1[t][i] * ex2[t][j];
      sign[i * m + j] = static_cast<signed char>((v > 0) - (v < 0));
    }
  auto at = [&](long i, long j) { return sign[i * m + j]; };
  auto changes = [](signed char a, signed char b) { return a != b || a == 0; };
  const long cells = resolution;
  std::vector<char> crossing(static_cast<std::size_t>(cells * cells), 0);
  for (long i = 0; i < cells; ++i)
    for (long j = 0; j < cells; ++j) {
      signed char s[4] = {at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)};
      bool pos = false, neg = false, zero = false;
      for (auto x : s) {
        pos |= x > 0;
        neg |= x < 0;
        zero |= x == 0;
      }
      crossing[i * cells + j] = (pos && neg) || zero;
    }
  Dsu dsu(static_cast<std::size_t>(cells * cells));
  for (long i = 0; i < cells; ++i)
    for (long j = 0; j < cells; ++j) {
      if (!crossing[i * cells + j]) continue;
      // the curve crosses the shared edge
      if (i + 1 < cells && crossing[(i + 1) * cells + j] && changes(at(i + 1, j), at(i + 1, j + 1)))
        dsu.unite(static_cast<int>(i * cells + j), static_cast<int>((i + 1) * cells + j));
      if (j + 1 < cells && crossing[i * cells + j + 1] && changes(at(i, j + 1), at(i + 1, j + 1)))
        dsu.unite(static_cast<int>(i * cells + j), static_cast<int>(i * cells + j + 1));
    }
  std::vector<char> is_root(static_cast<std::size_t>(cells * cells), 0), open(static_cast<std::size_t>(cells * cells), 0);
  for (long i = 0; i < cells; ++i)
    for (long j = 0; j < cells; ++j) {
      if (!crossing[i * cells + j]) continue;
      int r = dsu.find(static_cast<int>(i * cells + j));
      is_root[r] = 1;
      if (i == 0 || j == 0 || i == cells - 1 || j == cells - 1) open[r] = 1;
    }
  long compact = 0;
  for (std::size_t r = 0; r < is_root.size(); ++r)
    if (is_root[r] && !open[r]) ++compact;
  return compact;
}

ComponentReport count_compact_components_2d(const HypersurfaceInput& h, long resolution, int box_exponent,
                                            std::uint64_t seed) {
  validate(h);
  if (h.n != 2) throw DimensionError("component counting is implemented for n = 2");
  ComponentReport r;
  r.box_exponent = box_exponent;

  // critical points of z_1 on V(f); a singular point of V(f) is among them
  FewnomialSystem crit = critical_system(h);
  CountReport cc;
  try {
    cc = count_system_exact(crit, seed);
  } catch (const PositiveDimError&) {
    throw SmoothnessError("the critical system has a curve of solutions; V(f) is not smooth");
  }
  r.critical_count = cc.count;
  // roots on the coordinate axes are excluded exactly; only a perturbed count is inexact
  r.critical_exact = cc.certified || !cc.perturbed_count.has_value();
  if (cc.boundary_excluded > 0) r.notes += "critical points on the axes excluded; ";
  {
    PrecisionGuard guard(256);
    SparsePoly f = h.polynomial();
    SparsePoly d1 = f.derivative(0) * SparsePoly::variable(2, 0);
    for (const auto& s : cc.solutions) {
      Real v = abs(d1.eval(s.point)), scale = d1.eval_abs(s.point);
      if (v <= Real("1e-30") * scale) throw SmoothnessError("V(f) is singular at a critical point of z_1");
    }
  }
  if (!r.critical_exact) r.notes += "critical count from a perturbed instance; ";

  const SparsePoly f = h.polynomial();
  long res = resolution;
  for (int step = 0; step < 5; ++step) {
    r.grid_history.emplace_back(res, grid_compact_components(f, res, box_exponent));
    const auto& hist = r.grid_history;
    if (hist.size() >= 3) {
      const auto n3 = hist.size();
      if (hist[n3 - 1].second == hist[n3 - 2].second && hist[n3 - 2].second == hist[n3 - 3].second) {
        r.kappa_estimate = hist.back().second;
        r.resolution = res;
        break;
      }
    }
    if (step == 4) throw ResolutionError("grid refinements disagree three times");
    res *= 2;
  }

  r.caps.emplace_back("floor(critical/2)", Integer(r.critical_count / 2));
  for (const auto& b : kappa_bounds(h.n, h.k())) r.caps.emplace_back(b.name(), b.integer_cap);
  if (h.k() <= 3) {
    auto cert = kappa_certificate(h, seed);
    r.caps.emplace_back("rolle_chain", cert.instance_bound);
  }
  for (const auto& [name, cap] : r.caps) {
    if (name == "floor(critical/2)" && !r.critical_exact) continue;
    if (Integer(r.kappa_estimate) > cap)
      throw InconclusiveError("grid estimate " + std::to_string(r.kappa_estimate) + " exceeds " + name);
  }
  r.notes += "grid estimate, uncertified";
  return r;
}

HypersurfaceInput random_hypersurface(int n, int k, Rng& rng, long max_exp) {
  if (n < 1 || k < 1) throw RangeError("random hypersurface needs n, k >= 1");
  HypersurfaceInput h;
  h.n = n;
  for (int i = 0; i < n; ++i) h.e.push_back(rng.uniform_int(0, 1) ? 1 : -1);
  h.e0 = Rational(rng.nonzero_int(8)) / rng.uniform_int(1, 8);
  Support s = HypersurfaceInput{n, h.e, h.e0, {}, {}}.support();
  while (h.k() < k) {
    RatVector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.uniform_int(0, max_exp);
    if (std::find(s.points.begin(), s.points.end(), v) != s.points.end()) continue;
    s.points.push_back(v);
    h.a.push_back(v);
    h.c.push_back(Rational(rng.nonzero_int(6)) / rng.uniform_int(1, 4));
  }
  validate(h);
  return h;
}

HypersurfaceInput hypersurface_from_json(const Json& j) {
  try {
    if (j.contains("terms")) {
      const int n = j.at("n").get<int>();
      std::vector<std::pair<RatVector, Rational>> terms;
      for (const auto& t : j.at("terms")) terms.emplace_back(vector_from_json(t.at("exp")), rational_from_json(t.at("coeff")));
      return normal_form(SparsePoly::from_rational_terms(n, terms)).input;
    }
    HypersurfaceInput h;
    h.n = j.at("n").get<int>();
    h.e = vector_from_json(j.at("e"));
    h.e0 = rational_from_json(j.at("e0"));
    for (const auto& v : j.at("a")) h.a.push_back(vector_from_json(v));
    h.c = vector_from_json(j.at("c"));
    validate(h);
    return h;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed hypersurface: ") + ex.what());
  }
}

Json hypersurface_to_json(const HypersurfaceInput& h) {
  Json j;
  j["n"] = h.n;
  j["e"] = to_json(h.e);
  j["e0"] = to_json(h.e0);
  Json a = Json::array();
  for (const auto& v : h.a) a.push_back(to_json(v));
  j["a"] = a;
  j["c"] = to_json(h.c);
  return j;
}

Json kappa_certificate_to_json(const KappaCertificate& c) {
  Json j;
  j["n"] = c.n;
  j["k"] = c.k;
  j["instance_bound"] = c.instance_bound.get_str();
  j["empty_delta"] = c.empty_delta;
  if (c.faces) j["phi"] = c.faces->phi;
  if (c.chain) {
    Json flats = Json::array();
    for (const auto& f : c.chain->flat_bounds) flats.push_back(f.get_str());
    j["flat_bounds"] = flats;
    j["vertex_bound"] = c.chain->vertex_bound.get_str();
    j["total"] = c.chain->total.get_str();
  }
  Json gen = Json::array();
  for (const auto& b : c.generic) gen.push_back({{"name", b.name()}, {"cap", b.integer_cap.get_str()}});
  j["generic"] = gen;
  j["best_generic"] = c.best_generic.get_str();
  j["notes"] = c.notes;
  return j;
}

Json component_report_to_json(const ComponentReport& r) {
  Json j;
  j["kappa_estimate"] = r.kappa_estimate;
  j["certified"] = r.certified;
  j["critical_count"] = r.critical_count;
  j["critical_exact"] = r.critical_exact;
  Json hist = Json::array();
  for (const auto& [res, cnt] : r.grid_history) hist.push_back({{"resolution", res}, {"compact", cnt}});
  j["grid"] = hist;
  j["resolution"] = r.resolution;
  j["box_exponent"] = r.box_exponent;
  Json caps = Json::array();
  for (const auto& [name, cap] : r.caps) caps.push_back({{"name", name}, {"cap", cap.get_str()}});
  j["caps"] = caps;
  j["notes"] = r.notes;
  return j;
}

}  // namespace fnx

#include "fnx/suite/suite.hpp"

#include <chrono>
#include <sstream>

#include "fnx/bounds/bounds.hpp"
#include "fnx/core/errors.hpp"
#include "fnx/core/random_system.hpp"
#include "fnx/count/gale_count.hpp"
#include "fnx/gale/gale.hpp"
#include "fnx/hypersurface/hypersurface.hpp"
#include "fnx/polytope/polytope.hpp"
#include "fnx/rolle/rolle.hpp"

namespace fnx {

namespace {

// collects failures; the first few are kept in the report
struct Tally {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (first.size() < 5) first.push_back(what);
  }
  std::string summary() const {
    std::ostringstream s;
    s << checks << " checks, " << failures << " violations";
    for (const auto& f : first) s << "; " << f;
    return s.str();
  }
};

CriterionResult result(int id, const Tally& t, const std::string& extra = "") {
  CriterionResult r;
  r.id = id;
  r.pass = t.failures == 0 && t.checks > 0;
  r.detail = t.summary() + (extra.empty() ? "" : "; " + extra);
  return r;
}

Matrix random_dense(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(rng.nonzero_int(5)) / rng.uniform_int(1, 3);
  return m;
}

Matrix form_matrix(const HPolyhedron& d) {
  Matrix b(d.forms.size(), static_cast<std::size_t>(d.k) + 1);
  for (std::size_t i = 0; i < d.forms.size(); ++i) {
    b(i, 0) = d.forms[i].c0;
    for (int l = 0; l < d.k; ++l) b(i, l + 1) = d.forms[i].c[l];
  }
  return b;
}

// log system with dense exponents over a random (or cone) polyhedron
LogSystem random_log(long n, long k, Rng& rng, bool cone) {
  HPolyhedron d = cone ? random_cone_delta(n, k, rng) : random_delta(n, k, rng);
  return {random_dense(d.forms.size(), static_cast<std::size_t>(k), rng), form_matrix(d)};
}

std::string shape(long n, long k) { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; }

CriterionResult constants(std::uint64_t) {
  Tally t;
  auto find = [](const std::vector<BoundValue>& row, FormulaId id) -> Integer {
    for (const auto& b : row)
      if (b.id == id) return b.integer_cap;
    return -1;
  };
  auto row = bounds_table_row(2, 2);
  Integer kh = find(row, FormulaId::Khovanskii), nb = find(row, FormulaId::NewFewnomial), k2 = find(row, FormulaId::BoundK2);
  t.check(kh == 5184, "Khovanskii at (2,2) is " + kh.get_str());
  t.check(nb == 20, "new bound at (2,2) is " + nb.get_str());
  t.check(k2 == 15, "k=2 bound at (2,2) is " + k2.get_str());
  Rational lb = lower_bound(2, 2);
  t.check(lb == 4, "lower bound at (2,2) is " + lb.get_str());
  Integer k3 = find(bounds_table_row(2, 3), FormulaId::BoundK3);
  t.check(k3 == 100, "k=3 bound at (2,3) is " + k3.get_str());
  return result(1, t, "5184 / 20 / 15 / 4 at (2,2), " + k3.get_str() + " at (2,3)");
}

CriterionResult technical_sweep(std::uint64_t) {
  Tally t;
  for (long n = 2; n <= 40; ++n)
    for (long k = 2; k <= 40; ++k) {
      auto rep = technical_inequality_check(n, k, false);
      t.check(rep.holds_literal && rep.holds_enclosure, "sum inequality fails at " + shape(n, k));
      t.check(rep.holds_terms, "per-term inequality fails at " + shape(n, k));
    }
  return result(2, t, "2 <= n,k <= 40");
}

CriterionResult cauchy_binet(std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x3001);
  for (int trial = 0; trial < 200; ++trial) {
    const long k = rng.uniform_int(1, 4);
    const long m = rng.uniform_int(k, 6);
    RatVector c(static_cast<std::size_t>(m));
    for (auto& x : c) x = rng.rational(9, 4);
    Matrix d(static_cast<std::size_t>(m), static_cast<std::size_t>(k)), e = d;
    for (long i = 0; i < m; ++i)
      for (long j = 0; j < k; ++j) {
        d(i, j) = rng.rational(9, 4);
        e(i, j) = rng.rational(9, 4);
      }
    auto rep = cauchy_binet_check(c, d, e);
    t.check(rep.equal && rep.lhs == rep.rhs, "instance " + std::to_string(trial));
  }
  return result(3, t, "200 instances, m <= 6, k <= 4");
}

CriterionResult closed_form(std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x4001);
  PrecisionGuard guard(128);
  const Real tol("1e-9");
  Real worst = 0;
  const long shapes[3][2] = {{2, 2}, {3, 2}, {2, 3}};
  for (int inst = 0; inst < 20; ++inst) {
    const long n = shapes[inst % 3][0], k = shapes[inst % 3][1];
    LogSystem l = random_log(n, k, rng, false);
    HPolyhedron delta = build_delta(static_cast<int>(k), l.forms());
    for (int s = 0; s < 100; ++s) {
      RatVector yq = random_interior_point(delta, rng);
      RealVector y;
      for (const auto& x : yq) y.push_back(to_real(x));
      Real closed = gamma_k_closed_form(l, y);
      Real jac = 0;
      {
        auto g = psi_eval(l, y).gradient;
        // Leibniz-free determinant by elimination on a copy
        const std::size_t kk = g.size();
        Real det = 1;
        for (std::size_t c = 0; c < kk; ++c) {
          std::size_t piv = c;
          for (std::size_t r = c + 1; r < kk; ++r)
            if (abs(g[r][c]) > abs(g[piv][c])) piv = r;
          if (g[piv][c] == 0) {
            det = 0;
            break;
          }
          if (piv != c) {
            std::swap(g[piv], g[c]);
            det = -det;
          }
          det *= g[c][c];
          for (std::size_t r = c + 1; r < kk; ++r) {
            Real f = g[r][c] / g[c][c];
            for (std::size_t q = c; q < kk; ++q) g[r][q] -= f * g[c][q];
          }
        }
        jac = det;
      }
      Real scale = std::max(abs(closed), abs(jac));
      Real err = scale > 0 ? Real(abs(closed - jac) / scale) : Real(0);
      worst = std::max(worst, err);
      t.check(err < tol, "instance " + std::to_string(inst) + " point " + std::to_string(s));
    }
  }
  std::ostringstream s;
  s << "20 instances x 100 points at 128 bits, worst relative error " << worst.str(3, std::ios::scientific);
  return result(4, t, s.str());
}

CriterionResult degrees(std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x5001);
  const long shapes[3][2] = {{2, 2}, {3, 2}, {2, 3}};
  long towers = 0;
  for (const auto& sh : shapes) {
    const long n = sh[0], k = sh[1];
    for (int inst = 0; inst < 3; ++inst) {
      LogSystem l = random_log(n, k, rng, false);
      GammaTower tw = gamma_tower(l, true, rng.next());
      ++towers;
      for (long j = 0; j < k; ++j) {
        const long expect = n << j;  // deg F_{k-j}
        t.check(tw.degree[k - j - 1] == expect, "deg F_" + std::to_string(k - j) + " at " + shape(n, k) + " is " +
                                                     std::to_string(tw.degree[k - j - 1]));
      }
    }
    // cone instances: F_j has monomial degrees in the slab [2^{k-j}(n-1), 2^{k-j} n]
    for (int inst = 0; inst < 3; ++inst) {
      LogSystem l = random_log(n, k, rng, true);
      GammaTower tw = gamma_tower(l, true, rng.next());
      ++towers;
      for (long j = 1; j <= k; ++j) {
        const long e = 1L << (k - j);
        t.check(tw.degree[j - 1] <= e * n && tw.min_degree[j - 1] >= e * (n - 1),
                "cone F_" + std::to_string(j) + " at " + shape(n, k) + " has degrees [" +
                    std::to_string(tw.min_degree[j - 1]) + ", " + std::to_string(tw.degree[j - 1]) + "]");
      }
    }
  }
  return result(5, t, std::to_string(towers) + " towers over (2,2), (3,2), (2,3)");
}

struct CountedInstance {
  FewnomialSystem sys;
  long count = 0;
  std::uint64_t seed = 0;
};

// the instances of criterion 6, shared with criterion 7
std::vector<CountedInstance> bijection_instances(std::uint64_t seed, Tally& t, long& skipped, Real& worst) {
  std::vector<CountedInstance> out;
  Rng rng(seed ^ 0x6001);
  auto run = [&](int n, int k, int wanted) {
    int got = 0;
    while (got < wanted) {
      auto sys = random_integer_system(n, k, rng);
      const std::uint64_t s = rng.next();
      BijectionReport rep;
      try {
        rep = verify_bijection(sys, s);
      } catch (const PositiveDimError&) {
        ++skipped;
        continue;
      }
      ++got;
      worst = std::max(worst, rep.max_residual);
      t.check(rep.exact, "count not exact at " + shape(n, k));
      t.check(rep.counts_equal, "counts " + std::to_string(rep.source_count) + " vs " +
                                    std::to_string(rep.gale_count) + " at " + shape(n, k));
      t.check(rep.matched && rep.injective, "phi_V images do not match the Gale solutions at " + shape(n, k));
      t.check(rep.max_residual < Real("1e-10"), "residual too large at " + shape(n, k));
      out.push_back({sys, rep.source_count, s});
    }
  };
  run(2, 2, 50);
  // (1,1), (1,2) and (2,1): the exact counters cover n, k <= 2
  for (int i = 0; i < 20; ++i) run(i % 3 == 2 ? 2 : 1, i % 3 == 1 ? 2 : 1, 1);
  return out;
}

CriterionResult bijection(std::uint64_t seed) {
  Tally t;
  long skipped = 0;
  Real worst = 0;
  auto inst = bijection_instances(seed, t, skipped, worst);
  long sols = 0;
  for (const auto& c : inst) sols += c.count;
  std::ostringstream s;
  s << inst.size() << " systems, " << sols << " positive solutions, " << skipped
    << " positive-dimensional draws replaced, worst residual " << worst.str(3, std::ios::scientific);
  return result(6, t, s.str());
}

CriterionResult bound_safety(std::uint64_t seed) {
  Tally t;
  long skipped = 0;
  Real worst = 0;
  auto inst = bijection_instances(seed, t, skipped, worst);
  Rng rng(seed ^ 0x7001);
  for (int extra = 0; extra < 100;) {
    auto sys = random_integer_system(2, 2, rng);
    const std::uint64_t s = rng.next();
    try {
      auto d = diagonalize_system(sys, s);
      auto c = count_gale_in_delta(gale_system_of(d), s);
      t.check(c.certified || c.boundary_excluded > 0, "uncertified count");
      inst.push_back({sys, c.count, s});
      ++extra;
    } catch (const PositiveDimError&) {
      continue;
    }
  }
  long max_count = 0;
  for (const auto& c : inst) {
    const long n = c.sys.n, k = c.sys.support.k();
    max_count = std::max(max_count, c.count);
    const std::string tag = shape(n, k) + " count " + std::to_string(c.count);
    for (const auto& b : bounds_table_row(n, k)) {
      if (b.id == FormulaId::LowerBound) continue;
      t.check(Integer(c.count) <= b.integer_cap, tag + " exceeds " + b.name());
    }
    if (n == 2 && k == 2) {
      t.check(c.count <= 15, tag + " exceeds 15");
      t.check(c.count <= 20, tag + " exceeds 20");
    }
    Rational kou = kouchnirenko_bound(c.sys.support);
    t.check(Rational(c.count) <= kou, tag + " exceeds Kouchnirenko " + kou.get_str());
    try {
      auto g = gale_system_of(diagonalize_system(c.sys, c.seed));
      auto cert = rolle_certificate(LogSystem::from_gale(g), false, 0, c.seed);
      t.check(Integer(c.count) <= cert.chain.total, tag + " exceeds chain " + cert.chain.total.get_str());
    } catch (const EmptyError&) {
      t.check(c.count == 0, tag + " with an empty polyhedron");
    }
  }
  return result(7, t, std::to_string(inst.size()) + " instances, largest count " + std::to_string(max_count));
}

CriterionResult basis_invariance(std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x8001);
  int done = 0;
  while (done < 20) {
    auto sys = random_integer_system(2, 2, rng);
    const std::uint64_t s = rng.next();
    Diagonalization d;
    long c0 = 0;
    GaleSystem base;
    try {
      d = diagonalize_system(sys, s);
      base = gale_system_of(d);
      c0 = count_gale_in_delta(base, s).count;
    } catch (const PositiveDimError&) {
      continue;
    }
    ++done;
    for (int m = 0; m < 5; ++m) {
      Matrix M = random_invertible(2, rng);
      auto other = build_gale_system(d.diagonal, base.dual.A * M);
      long c1 = count_gale_in_delta(other, s).count;
      t.check(c1 == c0, "instance " + std::to_string(done) + ": " + std::to_string(c0) + " vs " + std::to_string(c1));
    }
  }
  return result(8, t, "20 instances x 5 bases");
}

FaceLattice faces_with_retry(HPolyhedron p, Rng& rng) {
  for (int attempt = 0;; ++attempt) {
    try {
      return enumerate_faces(p);
    } catch (const DegeneracyError&) {
      if (attempt >= 10) throw;
      p = perturb_constants(p, rng);
    }
  }
}

CriterionResult face_bounds(std::uint64_t seed) {
  Tally t;
  Rng rng(seed ^ 0x9001);
  long cones = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const long k = 2 + inst % 2, n = rng.uniform_int(2, 5);
    auto lat = faces_with_retry(random_delta(n, k, rng), rng);
    auto rep = check_face_bounds(lat, n, k, std::nullopt, false);
    for (const auto& c : rep.checks)
      t.check(c.holds, c.name + " at " + shape(n, k) + ": " + c.lhs.get_str() + " > " + c.rhs.get_str());
  }
  for (int inst = 0; inst < 50; ++inst) {
    const long k = 2 + inst % 2, n = rng.uniform_int(2, 5);
    auto lat = faces_with_retry(random_cone_delta(n, k, rng), rng);
    auto rep = check_face_bounds(lat, n, k, std::size_t{0}, false);
    ++cones;
    for (const auto& c : rep.checks)
      t.check(c.holds, "cone " + c.name + " at " + shape(n, k) + ": " + c.lhs.get_str() + " > " + c.rhs.get_str());
  }
  return result(9, t, "50 generic polyhedra and " + std::to_string(cones) + " cones, k in {2,3}");
}

CriterionResult kappa_pipeline(std::uint64_t seed) {
  Tally t;
  HypersurfaceInput circle{2, {1, 1}, Rational(-3, 8), {{2, 0}, {0, 2}}, {-1, -1}};
  auto rc = count_compact_components_2d(circle, kDefaultGridResolution, kDefaultBoxExponent, seed);
  t.check(rc.kappa_estimate == 1, "circle kappa " + std::to_string(rc.kappa_estimate));
  t.check(rc.critical_count == 2 && rc.critical_exact, "circle critical count " + std::to_string(rc.critical_count));
  Rng rng(seed ^ 0xa001);
  int done = 0;
  long skipped = 0, positive = 0;
  const Integer cap = best_kappa_cap(2, 2);
  t.check(cap == 5, "generic cap at n=2 is " + cap.get_str());
  while (done < 20) {
    // every other draw is circle-like, z1 + z2 - c1 z^a1 - c2 z^a2 - r, so ovals occur
    HypersurfaceInput h = random_hypersurface(2, 2, rng, 3);
    if (done % 2 == 1) {
      h.e = {1, 1};
      h.e0 = -Rational(rng.uniform_int(1, 12), 16);
      h.a = {{rng.uniform_int(2, 3), rng.uniform_int(0, 1)}, {rng.uniform_int(0, 1), rng.uniform_int(2, 3)}};
      h.c = {-Rational(rng.uniform_int(2, 8), 4), -Rational(rng.uniform_int(2, 8), 4)};
    }
    const std::uint64_t s = rng.next();
    ComponentReport r;
    try {
      r = count_compact_components_2d(h, kDefaultGridResolution, kDefaultBoxExponent, s);
    } catch (const SmoothnessError&) {
      ++skipped;
      continue;
    }
    ++done;
    positive += r.kappa_estimate > 0;
    const std::string tag = "instance " + std::to_string(done);
    t.check(r.critical_exact, tag + ": critical count not exact");
    t.check(2 * r.kappa_estimate <= r.critical_count, tag + ": kappa above half the critical count");
    t.check(Integer(r.critical_count / 2) <= cap, tag + ": half the critical count above 5");
    auto cert = kappa_certificate(h, s);
    t.check(Integer(r.critical_count / 2) <= cert.instance_bound, tag + ": certificate below the critical count");
  }
  return result(10, t, "circle kappa 1 with 2 critical points; 20 smooth instances (" + std::to_string(positive) +
                           " with compact ovals), " + std::to_string(skipped) + " singular draws replaced");
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
  return {
      {1, "constant reproduction", constants},
      {2, "technical inequality sweep", technical_sweep},
      {3, "Cauchy-Binet identity", cauchy_binet},
      {4, "closed form of the last Jacobian", closed_form},
      {5, "degrees and cone sparsity of the Jacobian tower", degrees},
      {6, "Gale bijection", bijection},
      {7, "bound safety", bound_safety},
      {8, "basis invariance", basis_invariance},
      {9, "face bounds", face_bounds},
      {10, "compact component pipeline", kappa_pipeline},
  };
}

namespace {
double limit_for(int id) {
  switch (id) {
    case 1: return 1;
    case 2: return 30;
    case 3: return 10;
    case 6: return 300;
    case 10: return 120;
    default: return 0;
  }
}
}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& only,
                                            const std::function<void(const CriterionResult&)>& on_done) {
  std::vector<CriterionResult> out;
  for (const auto& c : acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = c.run(seed);
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.id = c.id;
    r.title = c.title;
    r.limit_seconds = limit_for(c.id);
    if (r.limit_seconds > 0 && r.seconds >= r.limit_seconds) {
      r.pass = false;
      r.detail += "; over the time limit";
    }
    if (on_done) on_done(r);
    out.push_back(r);
  }
  return out;
}

Json criterion_to_json(const CriterionResult& r, bool with_time) {
  Json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["pass"] = r.pass;
  j["detail"] = r.detail;
  if (r.limit_seconds > 0) j["limit_seconds"] = r.limit_seconds;
  if (with_time) j["seconds"] = r.seconds;
  return j;
}

}  // namespace fnx

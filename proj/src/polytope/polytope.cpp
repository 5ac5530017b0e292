#include "fnx/polytope/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fnx/core/errors.hpp"
#include "fnx/core/support.hpp"

namespace fnx {

namespace {

struct Ineq {
  Rational b;
  RatVector a;
  friend bool operator<(const Ineq& x, const Ineq& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
  friend bool operator==(const Ineq& x, const Ineq& y) { return x.a == y.a && x.b == y.b; }
};

// positive rescaling so equal half-spaces compare equal
Ineq normalized(Ineq q) {
  Rational m = 0;
  for (const auto& x : q.a) m = std::max(m, Rational(abs(x)));
  if (m == 0) m = abs(q.b);
  if (m == 0) return q;
  q.b /= m;
  for (auto& x : q.a) x /= m;
  return q;
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

constexpr std::size_t kFourierMotzkinLimit = 50000;

}  // namespace

std::optional<RatVector> interior_point(int k, const std::vector<LinearForm>& forms) {
  // stage s keeps variables 0 .. k-1-s
  std::vector<std::vector<Ineq>> stage(static_cast<std::size_t>(k) + 1);
  for (const auto& f : forms) {
    if (static_cast<int>(f.c.size()) != k) throw DimensionError("form has the wrong number of variables");
    stage[0].push_back(normalized({f.c0, f.c}));
  }
  for (int s = 0; s < k; ++s) {
    const std::size_t l = static_cast<std::size_t>(k - 1 - s);
    std::vector<Ineq> pos, neg, next;
    for (const auto& q : stage[s]) {
      if (q.a[l] > 0) {
        pos.push_back(q);
      } else if (q.a[l] < 0) {
        neg.push_back(q);
      } else {
        next.push_back(q);
      }
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational cp = -q.a[l], cq = p.a[l];
        Ineq r{cp * p.b + cq * q.b, RatVector(p.a.size())};
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = cp * p.a[i] + cq * q.a[i];
        next.push_back(normalized(std::move(r)));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > kFourierMotzkinLimit) throw SizeError("Fourier-Motzkin elimination grew too large");
    for (const auto& q : next) {
      bool constant = std::all_of(q.a.begin(), q.a.end(), [](const Rational& x) { return x == 0; });
      if (constant && q.b <= 0) return std::nullopt;
    }
    stage[s + 1] = std::move(next);
  }
  RatVector y(static_cast<std::size_t>(k), 0);
  for (int s = k - 1; s >= 0; --s) {
    const std::size_t l = static_cast<std::size_t>(k - 1 - s);
    std::optional<Rational> lo, hi;
    for (const auto& q : stage[s]) {
      if (q.a[l] == 0) continue;
      Rational rest = q.b;
      for (std::size_t i = 0; i < l; ++i) rest += q.a[i] * y[i];
      Rational bound = -rest / q.a[l];
      if (q.a[l] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi) {
      if (*lo >= *hi) throw std::logic_error("Fourier-Motzkin back substitution failed");
      y[l] = (*lo + *hi) / 2;
    } else if (lo) {
      y[l] = floor(*lo) + 1;
    } else if (hi) {
      y[l] = ceil(*hi) - 1;
    }
  }
  for (const auto& f : forms)
    if (f.eval(y) <= 0) throw std::logic_error("interior witness violates a form");
  return y;
}

HPolyhedron build_delta(int k, const std::vector<LinearForm>& forms) {
  HPolyhedron p;
  p.k = k;
  p.forms = forms;
  for (const auto& f : forms) p.linear_mask.push_back(f.c0 == 0);
  auto pt = interior_point(k, forms);
  if (!pt) throw EmptyError("the polyhedron is empty");
  p.interior = *pt;
  return p;
}

HPolyhedron build_delta(const Matrix& b) {
  if (b.cols() < 2) throw DimensionError("B needs k+1 >= 2 columns");
  const int k = static_cast<int>(b.cols()) - 1;
  std::vector<LinearForm> forms;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    LinearForm f{b(i, 0), RatVector(static_cast<std::size_t>(k))};
    for (int l = 0; l < k; ++l) f.c[l] = b(i, l + 1);
    forms.push_back(std::move(f));
  }
  return build_delta(k, forms);
}

std::vector<std::size_t> FaceLattice::facets_of(const Face& f) const {
  std::set<std::size_t> facet_forms;
  for (const auto& facet : faces[k - 1])
    for (auto i : facet.tight) facet_forms.insert(i);
  std::vector<std::size_t> out;
  for (auto i : f.tight)
    if (facet_forms.count(i)) out.push_back(i);
  return out;
}

namespace {

std::vector<RatVector> vertices_of(int k, const std::vector<LinearForm>& forms) {
  std::vector<RatVector> out;
  for_each_subset(forms.size(), static_cast<std::size_t>(k), [&](const std::vector<std::size_t>& s) {
    Matrix m(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    RatVector rhs(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) m(r, c) = forms[s[r]].c[c];
      rhs[r] = -forms[s[r]].c0;
    }
    auto x = solve(m, rhs);
    if (!x) return;
    for (const auto& f : forms)
      if (f.eval(*x) < 0) return;
    if (std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_origin(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

FaceLattice enumerate_faces(const HPolyhedron& p) {
  const int k = p.k;
  if (k < 1) throw DimensionError("polyhedron dimension must be positive");
  if (k > 3) throw DimensionError("exact face enumeration covers k <= 3");
  FaceLattice l;
  l.k = k;
  l.form_count = p.forms.size();

  std::vector<RatVector> normals;
  for (const auto& f : p.forms) normals.push_back(f.c);
  if (static_cast<int>(rank(Matrix::from_rows(normals))) < k)
    throw DegeneracyError("form normals do not span; the polyhedron contains a line");

  // v = sum of normals is positive on every nonzero recession direction
  RatVector v(static_cast<std::size_t>(k), 0);
  for (const auto& a : normals)
    for (int i = 0; i < k; ++i) v[i] += a[i];
  Rational r = 0;
  for (const auto& x : vertices_of(k, p.forms)) {
    Rational s = 0;
    for (int i = 0; i < k; ++i) s += v[i] * x[i];
    r = std::max(r, s);
  }
  r += 1;
  LinearForm clip{r, RatVector(static_cast<std::size_t>(k))};
  for (int i = 0; i < k; ++i) clip.c[i] = -v[i];

  std::vector<LinearForm> all = p.forms;
  all.push_back(clip);
  l.vertex_points = vertices_of(k, all);
  l.bounded = std::none_of(l.vertex_points.begin(), l.vertex_points.end(),
                           [&](const RatVector& x) { return clip.eval(x) == 0; });
  if (l.bounded) {
    all.pop_back();
  } else {
    l.clip = clip;
  }
  if (l.vertex_points.empty()) throw EmptyError("the closure has no vertices");

  std::vector<std::vector<std::size_t>> tight_at(l.vertex_points.size());
  for (std::size_t vi = 0; vi < l.vertex_points.size(); ++vi)
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].eval(l.vertex_points[vi]) == 0) tight_at[vi].push_back(i);

  std::map<std::vector<std::size_t>, Face> found;
  for (std::size_t j = 1; j <= static_cast<std::size_t>(k); ++j) {
    for_each_subset(all.size(), j, [&](const std::vector<std::size_t>& s) {
      std::vector<std::size_t> verts;
      for (std::size_t vi = 0; vi < l.vertex_points.size(); ++vi)
        if (std::includes(tight_at[vi].begin(), tight_at[vi].end(), s.begin(), s.end())) verts.push_back(vi);
      if (verts.empty() || found.count(verts)) return;
      Face f;
      f.vertices = verts;
      std::vector<RatVector> pts;
      for (auto vi : verts) pts.push_back(l.vertex_points[vi]);
      f.dim = affine_dimension(pts);
      f.tight = tight_at[verts[0]];
      for (auto vi : verts) {
        std::vector<std::size_t> both;
        std::set_intersection(f.tight.begin(), f.tight.end(), tight_at[vi].begin(), tight_at[vi].end(),
                              std::back_inserter(both));
        f.tight = std::move(both);
      }
      f.witness = RatVector(static_cast<std::size_t>(k), 0);
      for (const auto& x : pts)
        for (int i = 0; i < k; ++i) f.witness[i] += x[i];
      for (auto& x : f.witness) x /= static_cast<long>(pts.size());
      f.at_infinity = !l.bounded && std::binary_search(f.tight.begin(), f.tight.end(), l.clip_index());
      found.emplace(verts, std::move(f));
    });
  }
  l.faces.assign(static_cast<std::size_t>(k), {});
  for (auto& [key, f] : found)
    if (f.dim < k) l.faces[f.dim].push_back(f);
  for (auto& row : l.faces)
    std::sort(row.begin(), row.end(), [](const Face& a, const Face& b) { return a.vertices < b.vertices; });
  for (const auto& row : l.faces) l.phi.push_back(static_cast<long>(row.size()));

  // simple: a face of codimension j lies on exactly j facets and on no other form
  for (int d = 0; d < k; ++d)
    for (const auto& f : l.faces[d]) {
      if (d == 0 && is_origin(f.witness)) continue;
      if (l.facets_of(f).size() != static_cast<std::size_t>(k - d) || f.tight.size() != static_cast<std::size_t>(k - d))
        throw DegeneracyError("polyhedron is not simple; perturb the constant terms");
    }
  long euler = 0;
  for (int d = 0; d < k; ++d) euler += (d % 2 == 0 ? 1 : -1) * l.phi[d];
  if (euler != (k % 2 == 0 ? 0 : 2)) throw std::logic_error("Euler relation fails for the face lattice");
  return l;
}

SplitCounts split_face_counts(const FaceLattice& l, std::size_t phi1_index) {
  if (phi1_index >= l.form_count) throw DimensionError("phi1 index out of range");
  SplitCounts s;
  s.linear.assign(static_cast<std::size_t>(l.k), 0);
  s.nonlinear.assign(static_cast<std::size_t>(l.k), 0);
  for (int d = 0; d < l.k; ++d)
    for (const auto& f : l.faces[d]) {
      if (f.at_infinity || std::binary_search(f.tight.begin(), f.tight.end(), phi1_index)) {
        ++s.nonlinear[d];
        continue;
      }
      // remaining faces sit on linear facets only, so their span meets the origin
      std::vector<RatVector> rows;
      for (auto vi : f.vertices) {
        RatVector r = l.vertex_points[vi];
        r.push_back(1);
        rows.push_back(std::move(r));
      }
      auto before = rank(Matrix::from_rows(rows));
      RatVector e(static_cast<std::size_t>(l.k) + 1, 0);
      e.back() = 1;
      rows.push_back(e);
      if (rank(Matrix::from_rows(rows)) != before)
        throw DegeneracyError("face is neither linear nor on the facet at infinity or p_1 = 0");
      ++s.linear[d];
    }
  return s;
}

bool FaceBoundReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const FaceInequality& c) { return c.holds; });
}

FaceBoundReport check_face_bounds(const FaceLattice& l, long n, long k, std::optional<std::size_t> phi1_index,
                                  bool throw_on_violation) {
  if (k != l.k) throw DimensionError("k does not match the lattice");
  FaceBoundReport rep;
  auto add = [&](std::string name, long lhs, const Integer& rhs) {
    rep.checks.push_back({std::move(name), Integer(lhs), rhs, Integer(lhs) <= rhs});
  };
  auto choose = [](long a, long b) { return b < 0 ? Integer(0) : binomial(a, b); };
  for (long j = 1; j <= k; ++j)
    add("Phi_" + std::to_string(k - j) + " <= C(n+k+1," + std::to_string(j) + ")", l.phi[k - j], choose(n + k + 1, j));
  if (k == 3 && !phi1_index) {
    add("Phi_0 <= 2(n+2)", l.phi[0], Integer(2 * (n + 2)));
    add("Phi_1 <= 3(n+2)", l.phi[1], Integer(3 * (n + 2)));
    add("Phi_2 <= n+4", l.phi[2], Integer(n + 4));
  }
  if (phi1_index) {
    auto s = split_face_counts(l, *phi1_index);
    for (long j = 1; j <= k; ++j)
      add("Phi^nl_" + std::to_string(k - j) + " <= 2C(n+k-1," + std::to_string(j - 1) + ")+C(n+k-1," +
              std::to_string(j - 2) + ")",
          s.nonlinear[k - j], 2 * choose(n + k - 1, j - 1) + choose(n + k - 1, j - 2));
    for (long j = 1; j <= k - 1; ++j)
      add("Phi^l_" + std::to_string(k - j) + " <= C(n+k-1," + std::to_string(j) + ")", s.linear[k - j],
          choose(n + k - 1, j));
    add("Phi^l_0 <= 1", s.linear[0], Integer(1));
    if (k == 2) {
      add("Phi^l_1 <= 2", s.linear[1], Integer(2));
      add("Phi^nl_1 <= 2", s.nonlinear[1], Integer(2));
      add("Phi_0 <= 4", l.phi[0], Integer(4));
    }
    if (k == 3) {
      add("Phi_0 <= 4n+4", l.phi[0], Integer(4 * n + 4));
      add("Phi^l_1 <= n+2", s.linear[1], Integer(n + 2));
      add("Phi^nl_1 <= 2n+5", s.nonlinear[1], Integer(2 * n + 5));
      add("Phi^l_2 <= n+2", s.linear[2], Integer(n + 2));
      add("Phi^nl_2 <= 2", s.nonlinear[2], Integer(2));
    }
  }
  if (throw_on_violation && !rep.ok()) {
    for (const auto& c : rep.checks)
      if (!c.holds)
        throw ViolationError("face bound violated: " + c.name + " (" + c.lhs.get_str() + " > " + c.rhs.get_str() + ")");
  }
  return rep;
}

HPolyhedron perturb_constants(const HPolyhedron& p, Rng& rng, const Rational& rel) {
  HPolyhedron q = p;
  for (std::size_t i = 0; i < q.forms.size(); ++i) {
    // cone forms stay through the origin
    if (q.linear_mask[i]) continue;
    Rational scale = abs(q.forms[i].c0);
    for (const auto& c : q.forms[i].c) scale = std::max(scale, Rational(abs(c)));
    if (scale == 0) scale = 1;
    q.forms[i].c0 += rel * scale * (rng.rational(1000, 1) / 1000);
  }
  auto pt = interior_point(q.k, q.forms);
  if (!pt) throw EmptyError("perturbation emptied the polyhedron");
  q.interior = *pt;
  return q;
}

namespace {

RatVector random_point(long k, Rng& rng) {
  RatVector y(static_cast<std::size_t>(k));
  for (auto& x : y) {
    x = Rational(rng.uniform_int(1, 5)) / rng.uniform_int(1, 3);
  }
  return y;
}

RatVector random_normal(long k, Rng& rng) {
  RatVector a(static_cast<std::size_t>(k));
  for (auto& x : a) x = rng.nonzero_int(6);
  return a;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

HPolyhedron random_delta(long n, long k, Rng& rng) {
  if (n < 1 || k < 1) throw RangeError("random_delta needs n, k >= 1");
  RatVector y0 = random_point(k, rng);
  std::vector<LinearForm> forms;
  for (long i = 0; i < n; ++i) {
    RatVector a = random_normal(k, rng);
    Rational slack = Rational(rng.uniform_int(1, 9)) / rng.uniform_int(1, 4);
    forms.push_back({slack - dot(a, y0), a});
  }
  for (long j = 0; j < k; ++j) forms.push_back(coordinate_form(static_cast<std::size_t>(k), static_cast<std::size_t>(j)));
  return build_delta(static_cast<int>(k), forms);
}

namespace {

// every k of the normals independent, so the origin is the only vertex on more than k - 1 of them
bool general_position(const std::vector<RatVector>& normals, long k) {
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<long>(pick.size()) == k) {
      std::vector<RatVector> rows;
      for (auto i : pick) rows.push_back(normals[i]);
      return determinant(Matrix::from_rows(rows)) != 0;
    }
    for (std::size_t i = start; i < normals.size(); ++i) {
      pick.push_back(i);
      bool ok = rec(i + 1);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

}  // namespace

HPolyhedron random_cone_delta(long n, long k, Rng& rng) {
  if (n < 1 || k < 1) throw RangeError("random_cone_delta needs n, k >= 1");
  for (;;) {
    RatVector y0 = random_point(k, rng);
    std::vector<LinearForm> forms;
    RatVector w = random_normal(k, rng);
    for (auto& x : w) x = abs(x);
    forms.push_back({dot(w, y0) + Rational(rng.uniform_int(1, 9)) / rng.uniform_int(1, 4), RatVector(w.size())});
    for (std::size_t i = 0; i < w.size(); ++i) forms.back().c[i] = -w[i];
    for (long i = 1; i < n; ++i) {
      RatVector a;
      do {
        a = random_normal(k, rng);
      } while (dot(a, y0) == 0);
      if (dot(a, y0) < 0)
        for (auto& x : a) x = -x;
      forms.push_back({0, a});
    }
    for (long j = 0; j < k; ++j)
      forms.push_back(coordinate_form(static_cast<std::size_t>(k), static_cast<std::size_t>(j)));
    std::vector<RatVector> normals;
    for (std::size_t i = 1; i < forms.size(); ++i) normals.push_back(forms[i].c);
    if (general_position(normals, k)) return build_delta(static_cast<int>(k), forms);
  }
}

Json face_lattice_to_json(const FaceLattice& l) {
  Json j;
  j["k"] = l.k;
  j["bounded"] = l.bounded;
  if (l.clip) {
    j["clip"] = {{"c0", to_json(l.clip->c0)}, {"c", to_json(l.clip->c)}};
  } else {
    j["clip"] = nullptr;
  }
  j["phi"] = l.phi;
  Json verts = Json::array();
  for (const auto& v : l.vertex_points) verts.push_back(to_json(v));
  j["vertices"] = verts;
  Json faces = Json::array();
  for (const auto& row : l.faces)
    for (const auto& f : row) {
      Json t = Json::array();
      for (auto i : f.tight) {
        if (!l.bounded && i == l.clip_index()) {
          t.push_back("inf");
        } else {
          t.push_back(i);
        }
      }
      faces.push_back({{"dim", f.dim}, {"tight", t}, {"witness", to_json(f.witness)}, {"at_infinity", f.at_infinity}});
    }
  j["faces"] = faces;
  return j;
}

RatVector random_interior_point(const HPolyhedron& p, Rng& rng) {
  RatVector y = p.interior;
  RatVector dir(y.size());
  for (auto& x : dir) x = rng.rational(1000, 1) / 1000;
  Rational step = 1;
  for (int t = 0; t < 60; ++t) {
    RatVector cand(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) cand[i] = y[i] + step * dir[i];
    bool inside = std::all_of(p.forms.begin(), p.forms.end(), [&](const LinearForm& f) { return f.eval(cand) > 0; });
    if (inside) return cand;
    step /= 2;
  }
  return y;
}

// one representative per hyperplane: forms equal up to a positive factor cut out the same facet
std::vector<LinearForm> distinct_forms(const std::vector<LinearForm>& forms) {
  std::vector<LinearForm> out, scaled;
  for (const auto& f : forms) {
    Rational m = abs(f.c0);
    for (const auto& x : f.c) m = std::max(m, Rational(abs(x)));
    LinearForm g = f;
    if (m != 0) {
      g.c0 /= m;
      for (auto& x : g.c) x /= m;
    }
    bool seen = false;
    for (const auto& h : scaled) seen |= h.c0 == g.c0 && h.c == g.c;
    if (seen) continue;
    scaled.push_back(g);
    out.push_back(f);
  }
  return out;
}


}  // namespace fnx

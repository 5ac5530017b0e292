#include <algorithm>

#include "doctest.h"

#include "fnx/core/errors.hpp"
#include "fnx/core/json_io.hpp"
#include "fnx/core/matrix.hpp"
#include "fnx/core/rng.hpp"
#include "fnx/core/sparse_poly.hpp"
#include "fnx/core/support.hpp"
#include "fnx/core/upoly.hpp"

using namespace fnx;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Support make_support(int n, std::vector<std::vector<long>> pts) {
  Support w;
  w.n = n;
  for (auto& p : pts) {
    RatVector v;
    for (long x : p) v.push_back(Rational(x));
    w.points.push_back(v);
  }
  return w;
}

FewnomialSystem make_system(const Support& w, Rng& rng) {
  FewnomialSystem s;
  s.n = w.n;
  s.support = w;
  s.coeffs = Matrix(static_cast<std::size_t>(w.n), w.size());
  for (int i = 0; i < w.n; ++i)
    for (std::size_t j = 0; j < w.size(); ++j) s.coeffs(i, j) = rng.rational(9, 4);
  return s;
}

// Twice the area of the convex hull by monotone chain + shoelace.
Rational hull_area2(std::vector<RatVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto cross = [](const RatVector& o, const RatVector& a, const RatVector& b) -> Rational {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<RatVector> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  Rational a = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& r = hull[(i + 1) % hull.size()];
    a += p[0] * r[1] - p[1] * r[0];
  }
  return abs(a);
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(q("3/6") == Rational(1, 2));
  CHECK(q("0.125") == Rational(1, 8));
  CHECK(q("-3.5") == Rational(-7, 2));
  CHECK(q(" 42 ") == 42);
  CHECK(to_string(q("-4/6")) == "-2/3");
  CHECK_THROWS_AS(q("1/0"), ParseError);
  CHECK_THROWS_AS(q("abc"), ParseError);
  CHECK_THROWS_AS(q("1.2.3"), ParseError);
  CHECK(floor(q("-1/2")) == -1);
  CHECK(ceil(q("-1/2")) == 0);
  CHECK(binomial(6, 3) == 20);
  CHECK(two_pow_choose2(3) == 8);
}

TEST_CASE("kernel basis is exact and canonical") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng.uniform_int(0, 2), c = r + rng.uniform_int(0, 3);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform_int(-3, 3);
    Matrix kb = kernel_basis(m);
    CHECK(kb.cols() + rank(m) == c);
    CHECK((m * kb).is_zero());
    CHECK(rank(kb) == kb.cols());
    // scaling rows of m changes nothing
    Matrix m2 = m;
    for (std::size_t j = 0; j < c; ++j) m2(0, j) *= 3;
    CHECK(kernel_basis(m2) == kb);
  }
}

TEST_CASE("determinant and inverse") {
  Matrix m = Matrix::from_rows({{2, 1}, {7, 4}});
  CHECK(determinant(m) == 1);
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(*inv * m == Matrix::identity(2));
  CHECK_FALSE(inverse(Matrix::from_rows({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("normalize_support") {
  Rng rng(3);
  SUBCASE("translation") {
    Support w = make_support(2, {{1, 1}, {2, 1}, {1, 2}});
    auto sys = make_system(w, rng);
    auto nz = normalize_support(sys);
    CHECK(nz.support.points == make_support(2, {{0, 0}, {1, 0}, {0, 1}}).points);
    CHECK(nz.shift == RatVector{1, 1});
  }
  SUBCASE("identity permutation") {
    Support w = make_support(2, {{0, 0}, {1, 0}, {0, 1}});
    auto nz = normalize_support(make_system(w, rng));
    CHECK(nz.permutation == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("last n independent, checked against every n-subset") {
    Support w = make_support(2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}});
    auto nz = normalize_support(make_system(w, rng));
    Matrix last = Matrix::from_rows({nz.support.points[2], nz.support.points[3]});
    CHECK(rank(last) == 2);
    CHECK(nz.permutation == std::vector<std::size_t>{0, 1, 2, 3});
  }
  SUBCASE("origin moved first and columns follow") {
    Support w = make_support(2, {{1, 0}, {0, 1}, {0, 0}, {1, 1}});
    auto sys = make_system(w, rng);
    auto nz = normalize_support(sys);
    CHECK(nz.support.points[0] == RatVector{0, 0});
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(nz.system.coeffs(0, j) == sys.coeffs(0, nz.permutation[j]));
    Matrix last = Matrix::from_rows({nz.support.points[2], nz.support.points[3]});
    CHECK(rank(last) == 2);
  }
  SUBCASE("idempotent on random supports") {
    for (int t = 0; t < 30; ++t) {
      Support w;
      w.n = 2;
      w.points.push_back({0, 0});
      while (w.points.size() < 5) {
        RatVector p{rng.uniform_int(-3, 3), rng.uniform_int(-3, 3)};
        if (std::find(w.points.begin(), w.points.end(), p) == w.points.end()) w.points.push_back(p);
      }
      if (affine_dimension(w.points) < 2) continue;
      auto a = normalize_support(make_system(w, rng));
      auto b = normalize_support(a.system);
      CHECK(b.support.points == a.support.points);
      CHECK(b.system.coeffs == a.system.coeffs);
    }
  }
  SUBCASE("span error") {
    Support w = make_support(2, {{0, 0}, {1, 1}, {2, 2}});
    CHECK_THROWS_AS(normalize_support(make_system(w, rng)), SpanError);
  }
}

TEST_CASE("kouchnirenko bound") {
  CHECK(kouchnirenko_bound(make_support(2, {{0, 0}, {1, 0}, {0, 1}})) == 1);
  CHECK(kouchnirenko_bound(make_support(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})) == 2);
  CHECK(kouchnirenko_bound(make_support(1, {{0}, {3}, {1}})) == 3);
  CHECK(kouchnirenko_bound(make_support(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                            {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}})) == 6);
  CHECK_THROWS_AS(kouchnirenko_bound(make_support(2, {{0, 0}, {1, 1}, {2, 2}})), SpanError);

  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    Support w;
    w.n = 2;
    while (w.points.size() < 5) {
      RatVector p{rng.rational(6, 3), rng.rational(6, 3)};
      if (std::find(w.points.begin(), w.points.end(), p) == w.points.end()) w.points.push_back(p);
    }
    if (affine_dimension(w.points) < 2) continue;
    Rational v = kouchnirenko_bound(w);
    CHECK(v == hull_area2(w.points));
    // translation and permutation invariance
    Support moved = w;
    for (auto& p : moved.points) p[0] += 5, p[1] -= Rational(1, 3);
    std::reverse(moved.points.begin(), moved.points.end());
    CHECK(kouchnirenko_bound(moved) == v);
  }
}

TEST_CASE("eval_system") {
  Rng rng(9);
  SUBCASE("row sums zero at the all-ones point") {
    Support w = make_support(2, {{0, 0}, {1, 0}, {0, 1}, {2, 3}});
    auto sys = make_system(w, rng);
    for (int i = 0; i < 2; ++i) {
      Rational s = 0;
      for (std::size_t j = 1; j < 4; ++j) s += sys.coeffs(i, j);
      sys.coeffs(i, 0) = -s;
    }
    auto r = eval_system(sys, {Real(1), Real(1)}, 128);
    CHECK(abs(r[0]) < 1e-30);
    CHECK(abs(r[1]) < 1e-30);
  }
  SUBCASE("z - 1 at 2") {
    FewnomialSystem sys;
    sys.n = 1;
    sys.support = make_support(1, {{0}, {1}});
    sys.coeffs = Matrix::from_rows({{-1, 1}});
    auto r = eval_system(sys, {Real(2)}, 128);
    CHECK(abs(r[0] - 1) < 1e-30);
    CHECK_THROWS_AS(eval_system(sys, {Real(0)}, 128), DomainError);
  }
  SUBCASE("rational exponents agree with doubled precision") {
    Support w;
    w.n = 2;
    w.points = {{0, 0}, {Rational(1, 2), 0}, {0, Rational(3, 2)}, {Rational(-2, 3), 1}};
    auto sys = make_system(w, rng);
    RealVector z{Real("1.7"), Real("0.3")};
    auto a = eval_system(sys, z, 128);
    auto b = eval_system(sys, z, 256);
    for (int i = 0; i < 2; ++i) CHECK(abs(a[i] - b[i]) < 1e-35);
    // matches the SparsePoly evaluation with cleared denominators
    PrecisionGuard g(128);
    CHECK(abs(sys.polynomial(0).eval(z) - a[0]) < 1e-30);
  }
}

TEST_CASE("sparse polynomial arithmetic agrees with evaluation") {
  Rng rng(21);
  auto random_poly = [&](int terms) {
    SparsePoly p(2);
    for (int t = 0; t < terms; ++t)
      p.add_term({static_cast<int>(rng.uniform_int(0, 3)), static_cast<int>(rng.uniform_int(0, 3))},
                 rng.rational(5, 3));
    return p;
  };
  for (int t = 0; t < 100; ++t) {
    SparsePoly p = random_poly(4), r = random_poly(3);
    RatVector x{rng.rational(7, 5), rng.rational(7, 5)};
    CHECK((p * r).eval(x) == p.eval(x) * r.eval(x));
    CHECK((p + r).eval(x) == p.eval(x) + r.eval(x));
    CHECK((p - r).eval(x) == p.eval(x) - r.eval(x));
    CHECK((p * r).derivative(0) == p.derivative(0) * r + p * r.derivative(0));
    if (!r.is_zero()) CHECK((p * r).divide_exact(r) == p);
  }
  SparsePoly x = SparsePoly::variable(2, 0);
  CHECK_THROWS_AS((x + SparsePoly::constant(2, 1)).divide_exact(x), std::logic_error);
  CHECK(x.pow(3).total_degree() == 3);
  SparsePoly lin = SparsePoly::linear(1, {2, -1});
  CHECK(lin.eval(RatVector{1, 1}) == 2);
}

TEST_CASE("sparse polynomial with cleared rational exponents") {
  // z^(1/2) - 2 over N = 2; derivative is (1/2) z^(-1/2)
  SparsePoly p = SparsePoly::from_rational_terms(1, {{{Rational(1, 2)}, 1}, {{0}, -2}});
  CHECK(p.denom_clear() == 2);
  CHECK(p.coeff({1}) == 1);
  SparsePoly d = p.derivative(0);
  CHECK(d.coeff({-1}) == Rational(1, 2));
  PrecisionGuard g(128);
  CHECK(abs(p.eval(RealVector{Real(4)})) < 1e-30);
  CHECK(abs(d.eval(RealVector{Real(4)}) - Real("0.25")) < 1e-30);
}

TEST_CASE("univariate polynomials") {
  UPoly p({2, -3, 1});  // (x-1)(x-2)
  CHECK(p.eval(Rational(1)) == 0);
  CHECK(p.sign_at(Rational(3, 2)) == -1);
  UPoly sq = p * p * UPoly::linear_root(5);
  CHECK(squarefree_part(sq) == (p * UPoly::linear_root(5)).primitive());
  CHECK(gcd(sq, p) == p);
  auto [lo, hi] = interval_eval(p, Rational(0), Rational(3));
  CHECK(lo <= Rational(-1, 4));
  CHECK(hi >= 2);
}

TEST_CASE("system JSON round trip") {
  Json j = Json::parse(R"({"n":1,"support":[[0],["1/2"],[2]],"coeffs":[["-3/2",1,"0.5"]]})");
  auto sys = system_from_json(j);
  CHECK(sys.support.points[1][0] == Rational(1, 2));
  CHECK(sys.coeffs(0, 2) == Rational(1, 2));
  CHECK(system_from_json(system_to_json(sys)).coeffs == sys.coeffs);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"n":1})")), ParseError);
  CHECK_THROWS_AS(read_system_file("/nonexistent/x.json"), ParseError);
}

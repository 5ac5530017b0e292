#include "doctest.h"

#include "fnx/core/errors.hpp"
#include "fnx/core/random_system.hpp"
#include "fnx/count/gale_count.hpp"
#include "fnx/gale/gale.hpp"

using namespace fnx;

namespace {

FewnomialSystem make_system(int n, std::vector<RatVector> pts, std::vector<RatVector> rows) {
  FewnomialSystem s;
  s.n = n;
  s.support.n = n;
  s.support.points = std::move(pts);
  s.coeffs = Matrix::from_rows(rows);
  return s;
}

// -3 + z + 2 z^2, i.e. z = 3 - 2 z^2
FewnomialSystem quad() { return make_system(1, {{0}, {1}, {2}}, {{-3, 1, 2}}); }

bool proportional(const RatVector& a, const RatVector& b) {
  // a x b components vanish
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("relation matrices") {
  Support sq{2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  Matrix a = gale_exponents(sq);
  REQUIRE(a.cols() == 1);
  CHECK(proportional(a.col(0), {1, 1, -1}));

  Support line{1, {{0}, {1}, {2}}};
  Matrix b = gale_exponents(line);
  CHECK(proportional(b.col(0), {2, -1}));

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 3)), k = static_cast<int>(rng.uniform_int(1, 3));
    auto sys = random_integer_system(n, k, rng, 3);
    auto norm = normalize_support(sys);
    Matrix g = gale_exponents(norm.support);
    CHECK(g.cols() == static_cast<std::size_t>(k));
    CHECK(rank(g) == static_cast<std::size_t>(k));
    CHECK((norm.support.exponent_matrix() * g).is_zero());
  }
  CHECK_THROWS_AS(gale_exponents(Support{2, {{0, 0}, {1, 1}, {2, 2}}}), SpanError);
}

TEST_CASE("diagonal form") {
  auto d = diagonalize(normalize_support(quad()).system);
  REQUIRE(d.p.size() == 1);
  CHECK(d.p[0] == LinearForm{3, {-2}});

  // already diagonal: z1 = 1 + 2y1 - y2, z2 = 3 - y1 + 4y2 on {0, e1, e2, w3, w4}
  auto diag = make_system(2, {{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}}, {{-1, 1, 0, -2, 1}, {-3, 0, 1, 1, -4}});
  auto nd = normalize_support(diag);
  REQUIRE(nd.permutation == std::vector<std::size_t>{0, 1, 2, 3, 4});
  auto dd = diagonalize(nd.system);
  CHECK(dd.p[0] == LinearForm{1, {2, -1}});
  CHECK(dd.p[1] == LinearForm{3, {-1, 4}});

  // re-expansion: block * [I | -P] reproduces the coefficient rows
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    auto sys = random_integer_system(2, 2, rng);
    auto ns = normalize_support(sys);
    DiagonalForm f;
    try {
      f = diagonalize(ns.system);
    } catch (const SingularError&) {
      continue;
    }
    Matrix expanded(2, 5);
    for (int i = 0; i < 2; ++i) {
      expanded(i, 0) = -f.p[i].c0;
      expanded(i, 1 + i) = 1;
      for (int j = 0; j < 2; ++j) expanded(i, 3 + j) = -f.p[i].c[j];
    }
    Matrix block = ns.system.coeffs.select_cols({1, 2});
    CHECK(block * expanded == ns.system.coeffs);
  }

  auto singular = make_system(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{1, 1, 2, 3}, {2, 2, 4, 1}});
  CHECK_THROWS_AS(diagonalize(normalize_support(singular).system), SingularError);
  auto rescue = diagonalize_system(singular, 3);
  CHECK(rescue.perturbed);
  CHECK_FALSE(rescue.notes.empty());
}

TEST_CASE("worked one variable example") {
  auto d = diagonalize_system(quad());
  auto g = gale_system_of(d);
  CHECK(g.k() == 1);
  CHECK(g.dual.nW == 1);
  // (3 - 2y)^2 - y, or its negative
  SparsePoly expect(1);
  expect.add_term({2}, 4);
  expect.add_term({1}, -13);
  expect.add_term({0}, 9);
  auto eq = g.polynomial_equation(0);
  CHECK((eq == expect || eq == -expect));
  auto c = count_gale_in_delta(g);
  CHECK(c.count == 1);
  REQUIRE(c.solutions.size() == 1);
  CHECK(abs(c.solutions[0].point[0] - 1) < 1e-30);
  // y = 9/4 solves the polynomial but violates 3 - 2y > 0
  CHECK_FALSE(g.in_delta({Real("2.25")}));

  auto rep = verify_bijection(quad());
  CHECK(rep.source_count == 1);
  CHECK(rep.gale_count == 1);
  CHECK(rep.ok());

  // z = 1 maps to y = 1 and back
  auto y = phi_V({Real(1)}, d.normalized.support);
  CHECK(abs(y[0] - 1) < 1e-35);
  auto z = invert_phi({Real(1)}, d.diagonal, d.normalized.support, 128);
  CHECK(abs(z[0] - 1) < 1e-35);
}

TEST_CASE("phi_V and its inverse") {
  Support w{2, {{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 3}}};
  CHECK_THROWS_AS(phi_V({Real(1), Real(0)}, w), DomainError);
  auto one = phi_V({Real(1), Real(1)}, w);
  for (auto& v : one) CHECK(abs(v - 1) < 1e-35);

  PrecisionGuard guard(128);
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    // integer point, so every monomial value is an exact rational
    RatVector zq{rng.uniform_int(1, 7), rng.uniform_int(1, 7)};
    RealVector z{to_real(zq[0]), to_real(zq[1])};
    auto y = phi_V(z, w);
    // log y = exponent rows . log z
    for (int j = 0; j < 2; ++j) {
      Real expect = to_real(w.points[3 + j][0]) * log(z[0]) + to_real(w.points[3 + j][1]) * log(z[1]);
      CHECK(abs(log(y[j]) - expect) < 1e-30);
    }
    DiagonalForm d;
    d.n = 2;
    d.k = 2;
    for (int i = 0; i < 2; ++i) {
      Rational m = pow(zq[0], w.points[1 + i][0].get_num().get_si()) * pow(zq[1], w.points[1 + i][1].get_num().get_si());
      d.p.push_back(LinearForm{m, {0, 0}});
    }
    auto back = invert_phi(y, d, w, 128);
    CHECK(abs(back[0] / z[0] - 1) < 1e-12);
    CHECK(abs(back[1] / z[1] - 1) < 1e-12);
    // a wrong monomial value is detected
    d.p[0].c0 += 1;
    CHECK_THROWS_AS(invert_phi(y, d, w, 128), ConsistencyError);
  }
}

TEST_CASE("bijection on random systems") {
  auto none = make_system(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}}, {{1, 2, 3, 1, 5}, {2, 1, 1, 4, 3}});
  auto r0 = verify_bijection(none);
  CHECK(r0.source_count == 0);
  CHECK(r0.gale_count == 0);

  Rng rng(77);
  long total = 0;
  for (int t = 0; t < 12; ++t) {
    int n = t % 3 == 0 ? 1 : 2;
    int k = t % 3 == 1 ? 1 : 2;
    auto sys = random_integer_system(n, k, rng);
    BijectionReport rep;
    try {
      rep = verify_bijection(sys, static_cast<std::uint64_t>(t));
    } catch (const PositiveDimError&) {
      continue;
    }
    CHECK(rep.counts_equal);
    CHECK(rep.matched);
    CHECK(rep.injective);
    CHECK(rep.max_residual < 1e-10);
    total += rep.source_count;
  }
  MESSAGE("solutions seen " << total);
}

TEST_CASE("basis change leaves the count unchanged") {
  Rng rng(123);
  for (int t = 0; t < 5; ++t) {
    auto sys = random_integer_system(2, 2, rng);
    auto d = diagonalize_system(sys, 1);
    auto base = gale_system_of(d);
    CountReport c0;
    try {
      c0 = count_gale_in_delta(base);
    } catch (const PositiveDimError&) {
      continue;
    }
    for (int m = 0; m < 2; ++m) {
      Matrix M = random_invertible(2, rng);
      auto other = build_gale_system(d.diagonal, base.dual.A * M);
      auto c1 = count_gale_in_delta(other);
      CHECK(c1.count == c0.count);
      for (const auto& s : c1.solutions)
        for (const auto& r : base.log_residuals(s.point)) CHECK(abs(r) < 1e-20);
    }
  }
  // a rescaled column gives a power of the same equation
  auto d = diagonalize_system(quad());
  auto g = gale_system_of(d);
  Matrix tripled = g.dual.A;
  tripled(0, 0) *= 3;
  tripled(1, 0) *= 3;
  auto g3 = build_gale_system(d.diagonal, tripled);
  PrecisionGuard guard(128);
  RealVector y{Real("0.7")};
  CHECK(abs(g3.log_residuals(y)[0] - 3 * g.log_residuals(y)[0]) < 1e-30);
}

TEST_CASE("zero rows and nW") {
  // w2 takes part in no relation
  auto sys = make_system(2, {{0, 0}, {1, 0}, {0, 1}, {2, 0}}, {{1, -3, 1, 1}, {2, 1, -1, -1}});
  auto d = diagonalize_system(sys);
  auto g = gale_system_of(d);
  CHECK(g.dual.zero_rows == std::vector<std::size_t>{1});
  CHECK(g.dual.N == 2);
  CHECK(g.dual.nW == 1);
  CHECK(g.delta.size() == 3);
  CHECK_THROWS_AS(build_gale_system(d.diagonal, g.dual.A, ZeroRowPolicy::Error), ZeroRowError);
  CHECK(verify_bijection(sys).ok());

  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    auto s = random_integer_system(2, static_cast<int>(rng.uniform_int(1, 3)), rng);
    auto gs = gale_system_of(diagonalize_system(s));
    CHECK(gs.dual.nW <= 2);
  }
}

TEST_CASE("Gale dual JSON") {
  auto g = gale_system_of(diagonalize_system(quad()));
  Json j = gale_dual_to_json(g.dual);
  CHECK(j.contains("A"));
  CHECK(j["nW"] == 1);
  auto back = gale_dual_from_json(j);
  CHECK(back.A == g.dual.A);
  CHECK(back.B == g.dual.B);
  CHECK(back.perm == g.dual.perm);
  Json bad = j;
  bad.erase("B");
  CHECK_THROWS_AS(gale_dual_from_json(bad), ParseError);
  bad = j;
  bad["nW"] = 5;
  CHECK_THROWS_AS(gale_dual_from_json(bad), ParseError);
}

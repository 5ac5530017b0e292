#include "doctest.h"

#include "fnx/core/errors.hpp"
#include "fnx/count/gale_count.hpp"
#include "fnx/hypersurface/hypersurface.hpp"

using namespace fnx;

namespace {

// z1 + z2 - z1^2 - z2^2 - 3/8: a circle of radius sqrt(1/8) around (1/2, 1/2)
HypersurfaceInput circle() {
  HypersurfaceInput h;
  h.n = 2;
  h.e = {1, 1};
  h.e0 = Rational(-3, 8);
  h.a = {{2, 0}, {0, 2}};
  h.c = {-1, -1};
  return h;
}

}  // namespace

TEST_CASE("support order and polynomial") {
  auto h = circle();
  auto s = h.support();
  REQUIRE(s.size() == 5);
  CHECK(s.points[0] == RatVector{0, 0});
  CHECK(s.points[1] == RatVector{2, 0});
  CHECK(s.points[4] == RatVector{0, 1});
  auto f = h.polynomial();
  CHECK(f.eval(RatVector{Rational(1, 2), Rational(1, 2)}) == Rational(1, 8));
  CHECK(f.eval(RatVector{0, 0}) == Rational(-3, 8));
}

TEST_CASE("validation") {
  auto h = circle();
  h.e0 = 0;
  CHECK_THROWS_AS(validate(h), FormError);
  h = circle();
  h.e = {1, 2};
  CHECK_THROWS_AS(validate(h), FormError);
  h = circle();
  h.a[1] = {1, 0};
  CHECK_THROWS_AS(validate(h), FormError);
  h = circle();
  h.a.clear();
  h.c.clear();
  CHECK_THROWS_AS(validate(h), FormError);
}

TEST_CASE("normal form rescales coordinates") {
  // 4 z1 - 9 z2 + z1^2 z2 + 5
  SparsePoly f = SparsePoly::from_rational_terms(
      2, {{{1, 0}, 4}, {{0, 1}, -9}, {{2, 1}, 1}, {{0, 0}, 5}});
  auto nf = normal_form(f);
  CHECK(nf.input.e == RatVector{1, -1});
  CHECK(nf.scale == RatVector{Rational(1, 4), Rational(1, 9)});
  REQUIRE(nf.input.k() == 1);
  CHECK(nf.input.a[0] == RatVector{2, 1});
  CHECK(nf.input.c[0] == Rational(1, 144));
  // the rescaled polynomial agrees with f at scaled points
  RatVector x{Rational(3, 7), Rational(2, 5)};
  RatVector z{x[0] * nf.scale[0], x[1] * nf.scale[1]};
  CHECK(nf.input.polynomial().eval(x) == f.eval(z));

  // supports are preserved
  CHECK(nf.input.support().size() == f.size());

  // missing constant, missing coordinate, irrational rescale
  CHECK_THROWS_AS(normal_form(SparsePoly::from_rational_terms(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{2, 2}, 1}})),
                  FormError);
  CHECK_THROWS_AS(normal_form(SparsePoly::from_rational_terms(2, {{{1, 0}, 1}, {{0, 0}, 1}, {{2, 2}, 1}})),
                  FormError);
  CHECK_THROWS_AS(normal_form(SparsePoly::from_rational_terms(
                      2, {{{1, 0}, 2}, {{0, 1}, 1}, {{0, 0}, 1}, {{Rational(1, 2), 1}, 1}})),
                  FormError);
  // rational exponents with a perfect root are fine
  auto ok = normal_form(SparsePoly::from_rational_terms(
      2, {{{1, 0}, 4}, {{0, 1}, 1}, {{0, 0}, 1}, {{Rational(1, 2), 1}, 1}}));
  CHECK(ok.input.c[0] == Rational(1, 2));
}

TEST_CASE("critical system and its Gale dual agree") {
  auto h = circle();
  auto sys = critical_system(h);
  CHECK(sys.coeffs(1, 2) == -2);  // z2 d/dz2 of -z2^2
  CHECK(sys.coeffs(1, 4) == 1);
  CHECK(sys.coeffs(1, 0) == 0);
  auto direct = count_system_exact(sys, 1);
  CHECK(direct.certified);
  CHECK(direct.count == 2);
  auto g = component_gale_system(h);
  CHECK(g.k() == 2);
  CHECK(count_gale_in_delta(g, 1).count == 2);

  // second form carries no constant term
  CHECK(g.dual.B(1, 0) == 0);
}

TEST_CASE("critical counts match across random instances") {
  Rng rng(77);
  int compared = 0, nonzero = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto h = random_hypersurface(2, 2, rng);
    CountReport direct, gale;
    try {
      direct = count_system_exact(critical_system(h), rng.next());
      gale = count_gale_in_delta(component_gale_system(h), rng.next());
    } catch (const PositiveDimError&) {
      continue;
    } catch (const EmptyError&) {
      continue;
    }
    // the cone apex y = 0 is a boundary root of the Gale side, so only the direct count is certified
    if (!direct.certified) continue;
    CHECK(direct.count == gale.count);
    ++compared;
    nonzero += direct.count > 0;
  }
  CHECK(compared >= 25);
  CHECK(nonzero >= 3);
}

TEST_CASE("grid components on known curves") {
  CHECK(grid_compact_components(circle().polynomial(), 64, 3) == 1);
  // a line meets the boundary of the quadrant
  auto line = SparsePoly::from_rational_terms(2, {{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, -1}});
  CHECK(grid_compact_components(line, 64, 3) == 0);
  // two disjoint circles
  auto c1 = circle().polynomial();
  SparsePoly shift = SparsePoly::from_rational_terms(
      2, {{{1, 0}, -8}, {{0, 1}, -1}, {{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, Rational(129, 8)}});
  // (z1-4)^2 + (z2-1/2)^2 = 1/8
  CHECK(grid_compact_components(c1 * shift, 256, 2) == 2);
}

TEST_CASE("kappa of the circle") {
  auto r = count_compact_components_2d(circle());
  CHECK(r.kappa_estimate == 1);
  CHECK(r.critical_count == 2);
  CHECK(r.critical_exact);
  CHECK_FALSE(r.certified);
  CHECK(r.grid_history.size() >= 3);
  auto j = component_report_to_json(r);
  CHECK(j["kappa_estimate"] == 1);
}

TEST_CASE("kappa of a line and of a positive polynomial") {
  HypersurfaceInput line{2, {1, 1}, -1, {{1, 1}}, {Rational(1, 4)}};
  auto r = count_compact_components_2d(line);
  CHECK(r.kappa_estimate == 0);

  HypersurfaceInput pos{2, {1, 1}, 1, {{2, 0}, {0, 2}}, {1, 1}};
  auto rp = count_compact_components_2d(pos);
  CHECK(rp.kappa_estimate == 0);
  CHECK(rp.critical_count == 0);
  auto cert = kappa_certificate(pos);
  CHECK(cert.instance_bound == 0);
}

TEST_CASE("singular curves are rejected") {
  // (z1 - 1)(z2 - 1) has a node at (1, 1)
  HypersurfaceInput node{2, {-1, -1}, 1, {{1, 1}}, {1}};
  CHECK_THROWS_AS(count_compact_components_2d(node), SmoothnessError);
  // ((z1 - 1)^2 - (z2 - 1)^2) / 2 - 1 is a smooth hyperbola
  HypersurfaceInput hyp{2, {-1, 1}, -1, {{2, 0}, {0, 2}}, {Rational(1, 2), Rational(-1, 2)}};
  CHECK(count_compact_components_2d(hyp).kappa_estimate == 0);
}

TEST_CASE("random k = 2 instances stay under the caps") {
  Rng rng(2024);
  int done = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto h = random_hypersurface(2, 2, rng, 3);
    ComponentReport r;
    try {
      r = count_compact_components_2d(h, 64, 2, rng.next());
    } catch (const SmoothnessError&) {
      continue;
    }
    CHECK(r.kappa_estimate <= 5);
    if (r.critical_exact) CHECK(2 * r.kappa_estimate <= r.critical_count);
    ++done;
  }
  CHECK(done >= 10);
}

TEST_CASE("kappa certificates") {
  auto cert = kappa_certificate(circle());
  REQUIRE(cert.chain.has_value());
  CHECK(cert.chain->vertex_bound == 6);
  CHECK(cert.instance_bound <= 5);
  CHECK(cert.best_generic == 5);
  bool saw10 = false;
  for (const auto& b : cert.generic) saw10 |= b.integer_cap == 10;
  CHECK(saw10);

  HypersurfaceInput k1{2, {1, 1}, -1, {{1, 1}}, {1}};
  CHECK(kappa_certificate(k1).instance_bound == 1);

  Rng rng(5);
  int seen = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto h = random_hypersurface(2, 3, rng, 2);
    KappaCertificate c;
    try {
      c = kappa_certificate(h, rng.next());
    } catch (const DegeneracyError&) {
      continue;
    }
    if (c.empty_delta) continue;
    CHECK(c.chain->vertex_bound == 56);
    CHECK(c.instance_bound <= 46);
    CHECK(c.best_generic == 46);
    ++seen;
  }
  CHECK(seen >= 3);

  HypersurfaceInput k4{1, {1}, -1, {{2}, {3}, {4}, {5}}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(kappa_certificate(k4), SizeError);
  auto j = kappa_certificate_to_json(cert);
  CHECK(j["best_generic"] == "5");
}

TEST_CASE("json round trip") {
  auto h = circle();
  auto back = hypersurface_from_json(hypersurface_to_json(h));
  CHECK(back.e == h.e);
  CHECK(back.e0 == h.e0);
  CHECK(back.a == h.a);
  CHECK(back.c == h.c);
  Json terms = Json::parse(R"({"n": 1, "terms": [{"exp": [1], "coeff": "2"}, {"exp": [0], "coeff": "-1"},
                                                  {"exp": [2], "coeff": "8"}]})");
  auto nf = hypersurface_from_json(terms);
  CHECK(nf.e == RatVector{1});
  CHECK(nf.c[0] == 2);
  CHECK_THROWS_AS(hypersurface_from_json(Json::parse(R"({"n": 2})")), ParseError);
}

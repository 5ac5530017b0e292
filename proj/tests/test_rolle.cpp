#include "doctest.h"

#include <numeric>

#include "fnx/core/errors.hpp"
#include "fnx/core/random_system.hpp"
#include "fnx/count/gale_count.hpp"
#include "fnx/rolle/rolle.hpp"

using namespace fnx;

namespace {

// psi = 2 log(3 - 2y) - log y
LogSystem quad_log() { return {Matrix::from_rows({{2}, {-1}}), Matrix::from_rows({{3, -2}, {0, 1}})}; }

LogSystem make_log(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
  return {Matrix::from_rows(a), Matrix::from_rows(b)};
}

Matrix random_dense(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(rng.nonzero_int(5)) / rng.uniform_int(1, 3);
  return m;
}

// log system on a random delta with dense exponents
LogSystem random_log(long n, long k, Rng& rng, bool cone = false) {
  HPolyhedron d = cone ? random_cone_delta(n, k, rng) : random_delta(n, k, rng);
  Matrix b(d.forms.size(), static_cast<std::size_t>(k) + 1);
  for (std::size_t i = 0; i < d.forms.size(); ++i) {
    b(i, 0) = d.forms[i].c0;
    for (long l = 0; l < k; ++l) b(i, l + 1) = d.forms[i].c[l];
  }
  return {random_dense(d.forms.size(), static_cast<std::size_t>(k), rng), b};
}

RealVector interior_real(const LogSystem& l) {
  auto p = build_delta(l.k(), l.forms());
  RealVector y;
  for (const auto& x : p.interior) y.push_back(to_real(x));
  return y;
}

Rational leibniz(const Matrix& m) {
  const std::size_t k = m.rows();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    Rational term = 1;
    int inversions = 0;
    for (std::size_t i = 0; i < k; ++i) {
      term *= m(i, perm[i]);
      for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    }
    total += inversions % 2 ? Rational(-term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// central difference of f along coordinate c
template <class F>
Real central(F f, RealVector y, int c, const Real& h) {
  RealVector lo = y, hi = y;
  lo[c] -= h;
  hi[c] += h;
  return (f(hi) - f(lo)) / (2 * h);
}

Real rel_gap(const Real& a, const Real& b) {
  Real s = std::max(abs(a), abs(b));
  return s == 0 ? Real(0) : Real(abs(a - b) / s);
}

}  // namespace

TEST_CASE("psi values and gradient") {
  PrecisionGuard guard(256);
  auto q = quad_log();
  auto v = psi_eval(q, {Real(1)});
  CHECK(abs(v.psi[0]) < Real("1e-70"));
  CHECK(abs(v.gradient[0][0] + 5) < Real("1e-70"));
  CHECK_THROWS_AS(psi_eval(q, {Real(2)}), DomainError);
  CHECK_THROWS_AS(psi_eval(q, {Real(0)}), DomainError);

  // every p_i equal to 1
  auto ones = make_log({{1, 2}, {3, -1}, {-2, 5}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto w = psi_eval(ones, {Real(1), Real(1)});
  for (const auto& x : w.psi) CHECK(abs(x) < Real("1e-70"));

  Rng rng(6);
  const Real h("1e-20");
  for (int t = 0; t < 10; ++t) {
    auto l = random_log(2, 2, rng);
    RealVector y = interior_real(l);
    auto pv = psi_eval(l, y);
    Real norm = 0;
    for (const auto& row : pv.gradient)
      for (const auto& x : row) norm = std::max(norm, Real(abs(x)));
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 2; ++c) {
        Real fd = central([&](const RealVector& z) { return psi_eval(l, z).psi[j]; }, y, c, h);
        // relative to the largest entry, since single entries can cancel to 0
        CHECK(abs(fd - pv.gradient[j][c]) < Real("1e-12") * norm);
      }
  }
}

TEST_CASE("closed form of Gamma_k") {
  PrecisionGuard guard(128);
  auto q = quad_log();
  for (const char* s : {"0.3", "1", "1.4"}) {
    Real y(s);
    Real expect = Real(-4) / (3 - 2 * y) - 1 / y;
    CHECK(rel_gap(gamma_k_closed_form(q, {y}), expect) < Real("1e-35"));
  }
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    auto l = random_log(2, 2, rng);
    auto delta = build_delta(2, l.forms());
    for (int s = 0; s < 10; ++s) {
      // points along a ray from the interior witness
      RealVector y;
      Rational scale(1, 1 + s);
      for (std::size_t c = 0; c < 2; ++c) y.push_back(to_real(delta.interior[c] + scale * rng.rational(1, 8)));
      try {
        Real closed = gamma_k_closed_form(l, y);
        auto g = psi_eval(l, y).gradient;
        Real det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        CHECK(rel_gap(closed, det) < Real("1e-9"));
      } catch (const DomainError&) {
      }
    }
  }
  // a vanishing minor of A drops its term
  auto flat = make_log({{1, 2}, {2, 4}, {0, 1}}, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  RealVector y{Real("0.5"), Real("0.25")};
  Real p1 = 1 + y[0], p2 = 1 + y[1], p3 = y[0] + y[1];
  // minors: A_{12} = 0, A_{13} = 1, A_{23} = 2; B_{13} = 1, B_{23} = -1
  Real expect = Real(1) / (p1 * p3) - Real(2) / (p2 * p3);
  CHECK(rel_gap(gamma_k_closed_form(flat, y), expect) < Real("1e-35"));
}

TEST_CASE("Cauchy-Binet identity") {
  auto one = cauchy_binet_check({2, 3}, Matrix::from_rows({{1}, {4}}), Matrix::from_rows({{5}, {-1}}));
  CHECK(one.lhs == 2 * 5 - 12);
  CHECK(one.equal);
  auto id = cauchy_binet_check({3, 7}, Matrix::identity(2), Matrix::identity(2));
  CHECK(id.lhs == 21);
  CHECK(id.rhs == 21);

  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 4));
    std::size_t m = static_cast<std::size_t>(rng.uniform_int(static_cast<long>(k), 6));
    RatVector c(m);
    for (auto& x : c) x = rng.rational(5, 3);
    Matrix d(m, k), e(m, k);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        d(i, j) = rng.rational(4, 2);
        e(i, j) = rng.rational(4, 2);
      }
    auto rep = cauchy_binet_check(c, d, e);
    CHECK(rep.equal);
    Matrix g(k, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t i = 0; i < m; ++i) g(j, l) += c[i] * d(i, j) * e(i, l);
    CHECK(rep.lhs == leibniz(g));
  }
  CHECK_THROWS_AS(cauchy_binet_check({1}, Matrix::identity(2), Matrix::identity(2)), DimensionError);
}

TEST_CASE("Gamma tower for k = 1") {
  auto q = quad_log();
  auto t = gamma_tower(q);
  REQUIRE(t.F.size() == 1);
  // F_1 = 2 * (-2) * y - 1 * (3 - 2y) = -2y - 3
  SparsePoly expect = SparsePoly::linear(-3, {-2});
  CHECK(t.F[0] == expect);
  CHECK(t.degree[0] == 1);
  CHECK(t.generic_degrees);
  CHECK_FALSE(t.perturbed);
}

TEST_CASE("Gamma tower against numeric Jacobians") {
  PrecisionGuard guard(256);
  Rng rng(41);
  const Real h("1e-30");
  for (int t = 0; t < 6; ++t) {
    auto l = random_log(2, 2, rng);
    auto tower = gamma_tower(l);
    CHECK(tower.degree == std::vector<int>{4, 2});
    CHECK(tower.generic_degrees);
    RealVector y = interior_real(l);
    // Gamma_2 is the closed form; Gamma_1 = J(psi_1, Gamma_2)
    CHECK(rel_gap(tower.gamma(2, l, y), gamma_k_closed_form(l, y)) < Real("1e-60"));
    auto g = psi_eval(l, y).gradient;
    RealVector dgamma;
    for (int c = 0; c < 2; ++c)
      dgamma.push_back(central([&](const RealVector& z) { return gamma_k_closed_form(l, z); }, y, c, h));
    Real j1 = g[0][0] * dgamma[1] - g[0][1] * dgamma[0];
    CHECK(rel_gap(tower.gamma(1, l, y), j1) < Real("1e-40"));
  }
  // k = 3: Gamma_1 = J(psi_1, Gamma_2, Gamma_3)
  auto l3 = random_log(2, 3, rng);
  auto t3 = gamma_tower(l3);
  CHECK(t3.degree == std::vector<int>{8, 4, 2});
  RealVector y = interior_real(l3);
  auto g = psi_eval(l3, y).gradient;
  std::vector<RealVector> rows{g[0], {}, {}};
  for (int c = 0; c < 3; ++c) {
    rows[1].push_back(central([&](const RealVector& z) { return t3.gamma(2, l3, z); }, y, c, h));
    rows[2].push_back(central([&](const RealVector& z) { return t3.gamma(3, l3, z); }, y, c, h));
  }
  Real det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]) -
             rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0]) +
             rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
  CHECK(rel_gap(t3.gamma(1, l3, y), det) < Real("1e-40"));
}

TEST_CASE("cone case sparsity and guards") {
  Rng rng(17);
  for (int t = 0; t < 4; ++t) {
    long n = 2 + t % 2;
    auto l = random_log(n, 2, rng, true);
    auto tower = gamma_tower(l);
    // monomial degrees of F_j lie in [(n-1) 2^{k-j}, n 2^{k-j}]
    CHECK(tower.min_degree[1] >= n - 1);
    CHECK(tower.degree[1] <= n);
    CHECK(tower.min_degree[0] >= 2 * (n - 1));
    CHECK(tower.degree[0] <= 2 * n);
  }
  auto l3 = random_log(2, 3, rng, true);
  auto t3 = gamma_tower(l3);
  for (int j = 1; j <= 3; ++j) {
    CHECK(t3.min_degree[j - 1] >= 1 << (3 - j));
    CHECK(t3.degree[j - 1] <= 2 << (3 - j));
  }

  CHECK_THROWS_AS(gamma_tower(random_log(5, 2, rng)), SizeError);
  CHECK_THROWS_AS(gamma_tower(random_log(1, 4, rng)), SizeError);

  // rank-one exponents make Gamma_2 vanish
  auto degenerate = make_log({{1, 1}, {1, 1}, {1, 1}, {1, 1}}, {{1, -1, -1}, {2, -1, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(gamma_tower(degenerate, false), SingularError);
  auto rescued = gamma_tower(degenerate, true, 5);
  CHECK(rescued.perturbed);
  CHECK_FALSE(rescued.notes.empty());
}

TEST_CASE("Rolle chain with actual face counts") {
  Matrix a4 = Matrix::from_rows({{1, 0}, {0, 1}, {2, -1}, {-1, 3}});
  // quadrant without its corner, capped by 3 + y1 - y2: five facets with the one at infinity
  auto five = LogSystem{a4, Matrix::from_rows({{-1, 1, 1}, {3, 1, -1}, {0, 1, 0}, {0, 0, 1}})};
  auto faces = enumerate_faces(build_delta(2, five.forms()));
  CHECK(faces.phi == std::vector<long>{5, 5});
  auto c = kr_chain_bound(five, faces, 2, 2);
  CHECK(c.flat_bounds == std::vector<Integer>{5, 2});
  CHECK(c.vertex_bound == 8);
  CHECK(c.total == 15);

  // triangle plus a redundant form: fewer faces, smaller bound
  auto tri = LogSystem{a4, Matrix::from_rows({{1, -1, -1}, {5, -1, 0}, {0, 1, 0}, {0, 0, 1}})};
  auto tf = enumerate_faces(build_delta(2, tri.forms()));
  CHECK(tf.phi == std::vector<long>{3, 3});
  CHECK(kr_chain_bound(tri, tf, 2, 2).total == 12);

  // prism clipped to a cube: full face counts for n = 2, k = 3
  Matrix a5 = Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}, {2, -1, 1}});
  auto prism = LogSystem{a5, Matrix::from_rows({{1, -1, 0, 0}, {1, 0, -1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})};
  auto pf = enumerate_faces(build_delta(3, prism.forms()));
  CHECK(pf.phi == std::vector<long>{8, 12, 6});
  auto c3 = kr_chain_bound(prism, pf, 2, 3);
  CHECK(c3.flat_bounds == std::vector<Integer>{24, 8, 4});
  CHECK(c3.total == 100);

  // cone case, n = 2: triangle on the y1 axis side
  auto cone = LogSystem{a4, Matrix::from_rows({{1, -1, -1}, {0, 2, -1}, {0, 1, 0}, {0, 0, 1}})};
  auto cf = enumerate_faces(build_delta(2, cone.forms()));
  auto cc = kr_chain_bound(cone, cf, 2, 2, true, 0);
  REQUIRE(cc.kappa);
  CHECK(cc.vertex_bound == 6);
  CHECK(*cc.kappa <= 5);
  CHECK_THROWS_AS(kr_chain_bound(cone, cf, 3, 2), DimensionError);
}

TEST_CASE("certificates on random Gale systems") {
  Rng rng(2718);
  long seen = 0;
  for (int t = 0; t < 8; ++t) {
    auto sys = random_integer_system(2, 2, rng);
    auto g = gale_system_of(diagonalize_system(sys, 1));
    RolleCertificate cert;
    CountReport count;
    try {
      cert = rolle_certificate(LogSystem::from_gale(g), false, 0, static_cast<std::uint64_t>(t));
      count = count_gale_in_delta(g);
    } catch (const EmptyError&) {
      continue;
    } catch (const PositiveDimError&) {
      continue;
    }
    ++seen;
    CHECK(cert.chain_within_generic);
    CHECK(cert.degrees_ok);
    CHECK(cert.closed_form_error < Real("1e-9"));
    CHECK(Integer(count.count) <= cert.chain.total);
    auto j = rolle_certificate_to_json(cert);
    CHECK(j.contains("flat_bounds"));
  }
  CHECK(seen >= 5);
  for (int t = 0; t < 4; ++t) {
    auto l = random_log(2 + t % 2, 2, rng, true);
    auto cert = rolle_certificate(l, true, 0, 3);
    CHECK(cert.chain_within_generic);
    CHECK(cert.degrees_ok);
    REQUIRE(cert.chain.kappa);
    CHECK(*cert.chain.kappa <= Integer((5 * (2 + t % 2) + 1) / 2));
  }
}

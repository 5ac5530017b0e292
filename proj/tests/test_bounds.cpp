#include "doctest.h"

#include "fnx/bounds/bounds.hpp"
#include "fnx/core/errors.hpp"

using namespace fnx;

namespace {

Integer cap_of(const std::vector<BoundValue>& v, FormulaId id) {
  for (const auto& b : v)
    if (b.id == id) return b.integer_cap;
  FAIL("formula missing");
  return -1;
}

bool has(const std::vector<BoundValue>& v, FormulaId id) {
  for (const auto& b : v)
    if (b.id == id) return true;
  return false;
}

}  // namespace

TEST_CASE("e^2 enclosure brackets an independent evaluation") {
  PrecisionGuard g(512);
  Real e2 = boost::multiprecision::exp(Real(2));
  for (const auto& c : all_constants()) {
    CHECK(c.lower < c.upper);
    CHECK(c.width() < Rational(1, 1000000000));
  }
  const auto& e = e_squared();
  CHECK(to_real(e.lower) < e2);
  CHECK(e2 < to_real(e.upper));
  CHECK(e.width() <= Rational(Integer(2), Integer("1" + std::string(64, '0'))));
  // the bracket quoted for (e^2-1)/2
  CHECK(Rational(31, 10) < e2_minus_1_over_2().lower);
  CHECK(e2_minus_1_over_2().upper < Rational(32, 10));
  CHECK(Rational(31945, 10000) < e2_minus_1_over_2().lower);
}

TEST_CASE("integer cap rule") {
  CHECK(integer_cap(20, 20, true) == 19);
  CHECK(integer_cap(20, 20, false) == 20);
  CHECK(integer_cap(Rational(41, 2), Rational(41, 2), true) == 20);
  CHECK(integer_cap(Rational(2078, 100), Rational(2079, 100), true) == 20);
  CHECK(integer_cap(0, 0, true) == 0);
}

TEST_CASE("catalog values") {
  CHECK(khovanskii_bound(2, 2).integer_cap == 5184);
  CHECK(khovanskii_bound(1, 1).integer_cap == 8);
  CHECK(khovanskii_bound(3, 2).integer_cap == 1048576);

  auto nb = new_fewnomial_bound(2, 2);
  CHECK(nb.integer_cap == 20);
  CHECK(nb.strict);
  CHECK(abs(nb.real_value() - Real("20.778")) < 0.001);
  CHECK(new_fewnomial_bound(2, 2, 1).integer_cap == 5);
  CHECK(new_fewnomial_bound(3, 2).integer_cap == 46);
  CHECK_THROWS_AS(new_fewnomial_bound(1, 2), RangeError);
  CHECK_THROWS_AS(new_fewnomial_bound(2, 1), RangeError);

  CHECK(bound_k2(2).integer_cap == 15);
  CHECK(bound_k2(3).integer_cap == 30);
  CHECK(bound_k2(4).integer_cap == 49);
  CHECK(bound_k3(2).integer_cap == 100);
  CHECK(bound_k3(3).integer_cap == 299);
  CHECK_THROWS_AS(bound_k3(1), RangeError);

  CHECK(lower_bound(2, 2) == 4);
  CHECK(lower_bound(4, 2) == 9);
  CHECK(lower_bound(2, 1) == 3);
}

TEST_CASE("caps agree with a floating point evaluation away from integers") {
  PrecisionGuard g(256);
  Real e2 = boost::multiprecision::exp(Real(2));
  for (long n = 2; n <= 8; ++n) {
    for (long k = 2; k <= 8; ++k) {
      Real v = (e2 + 3) / 4 * boost::multiprecision::pow(Real(2), k * (k - 1) / 2) * boost::multiprecision::pow(Real(n), k);
      Integer expect(boost::multiprecision::floor(v).convert_to<std::string>().substr(0, boost::multiprecision::floor(v).convert_to<std::string>().find('.')));
      auto b = new_fewnomial_bound(n, k);
      CHECK(b.integer_cap == expect);
      CHECK(to_real(b.lower) <= v);
      CHECK(v <= to_real(b.upper));
    }
  }
}

TEST_CASE("ordering of the bounds") {
  for (long n = 2; n <= 8; ++n)
    for (long k = 2; k <= 8; ++k) {
      auto nb = new_fewnomial_bound(n, k).integer_cap;
      CHECK(Rational(nb) >= lower_bound(n, k));
      CHECK(nb <= khovanskii_bound(n, k).integer_cap);
    }
  for (long n = 2; n <= 100; ++n) {
    CHECK(bound_k2(n).integer_cap <= new_fewnomial_bound(n, 2).integer_cap);
    CHECK(bound_k3(n).integer_cap <= new_fewnomial_bound(n, 3).integer_cap);
  }
}

TEST_CASE("technical inequality") {
  auto r = technical_inequality_check(2, 2);
  CHECK(r.lhs == 20);
  CHECK(r.a0 == 8);
  CHECK(r.ok());
  CHECK(r.terms.empty());

  // (2,3): direct summation, written out independently
  // a0 = 2^3 * 8 = 64; a1 = 2 * 4 * C(6,1) = 48; a2 = 1 * 2 * C(6,2) = 30; a3 = C(6,3) = 20
  auto r23 = technical_inequality_check(2, 3);
  CHECK(r23.a0 == 64);
  CHECK(r23.lhs == 98);
  CHECK(r23.holds_literal);
  CHECK(r23.terms.size() == 3);

  for (long n = 2; n <= 12; ++n)
    for (long k = 2; k <= 12; ++k) CHECK(technical_inequality_check(n, k).ok());
}

TEST_CASE("kappa bounds") {
  auto b22 = kappa_bounds(2, 2);
  CHECK(cap_of(b22, FormulaId::KappaGeneral) == 10);
  CHECK(cap_of(b22, FormulaId::KappaK2) == 5);
  CHECK(has(b22, FormulaId::KappaSparse));
  CHECK(best_kappa_cap(2, 2) == 5);

  auto b23 = kappa_bounds(2, 3);
  CHECK(cap_of(b23, FormulaId::KappaK3) == 46);
  CHECK_FALSE(has(b23, FormulaId::KappaSparse));

  CHECK(cap_of(kappa_bounds(5, 2), FormulaId::KappaK2) == 13);
  CHECK(cap_of(kappa_bounds(1, 4), FormulaId::Descartes) == 5);
  CHECK(cap_of(kappa_bounds(5, 1), FormulaId::KappaK1) == 1);

  // explicit k <= n expression evaluated in floating point
  PrecisionGuard g(256);
  Real e2 = boost::multiprecision::exp(Real(2));
  for (long n = 2; n <= 9; ++n)
    for (long k = 2; k <= n; ++k) {
      auto p2 = [](long m) { return m < 2 ? Real(1) : boost::multiprecision::pow(Real(2), m * (m - 1) / 2); };
      Real v = (Real(k) / 2 * p2(k) + (e2 + 1) / 8 * k * p2(k - 1)) * boost::multiprecision::pow(Real(n), k - 1) +
               e2 / 8 * p2(k - 2) * boost::multiprecision::pow(Real(n), k - 2);
      for (const auto& b : kappa_bounds(n, k)) {
        if (b.id != FormulaId::KappaSparse) continue;
        CHECK(to_real(b.lower) <= v);
        CHECK(v <= to_real(b.upper));
      }
    }
}

TEST_CASE("small parameter cases") {
  CHECK(descartes_k_any_n1(4) == 4);
  CHECK(bihan_k1(5) == 6);
  CHECK(kappa_k1() == 1);
  auto row = bounds_table_row(2, 2);
  CHECK(cap_of(row, FormulaId::Khovanskii) == 5184);
  CHECK(cap_of(row, FormulaId::NewFewnomial) == 20);
  CHECK(cap_of(row, FormulaId::BoundK2) == 15);
  CHECK(cap_of(row, FormulaId::LowerBound) == 4);
  CHECK(cap_of(bounds_table_row(2, 3), FormulaId::BoundK3) == 100);
}

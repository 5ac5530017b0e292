#include "fnx/count/bivariate.hpp"

#include <stdexcept>

namespace fnx {

void BiPoly::trim() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

UPoly BiPoly::at_u(const Rational& a) const {
  RatVector c;
  c.reserve(coeffs.size());
  for (const auto& p : coeffs) c.push_back(p.eval(a));
  return UPoly(std::move(c));
}

BiPoly shear(const SparsePoly& f, const Rational& t) {
  if (f.vars() != 2) throw std::invalid_argument("shear needs a bivariate polynomial");
  // c x^a y^b -> c (u - t y)^a y^b = sum_i c C(a,i) (-t)^i u^(a-i) y^(b+i)
  std::vector<RatVector> dense;
  for (const auto& [e, c] : f.terms()) {
    const int a = e[0], b = e[1];
    if (a < 0 || b < 0) throw std::invalid_argument("shear needs nonnegative exponents");
    Rational mt = -t;
    Rational tp = 1;
    for (int i = 0; i <= a; ++i) {
      std::size_t yj = static_cast<std::size_t>(b + i);
      std::size_t ui = static_cast<std::size_t>(a - i);
      if (dense.size() <= yj) dense.resize(yj + 1);
      if (dense[yj].size() <= ui) dense[yj].resize(ui + 1);
      dense[yj][ui] += c * Rational(binomial(a, i)) * tp;
      tp *= mt;
    }
  }
  BiPoly out;
  for (auto& c : dense) out.coeffs.emplace_back(std::move(c));
  out.trim();
  return out;
}

UPoly poly_determinant(std::vector<std::vector<UPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return UPoly::constant(1);
  int sign = 1;
  UPoly prev = UPoly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return UPoly();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
      m[i][k] = UPoly();
    }
    prev = m[k][k];
  }
  UPoly d = m[n - 1][n - 1];
  return sign > 0 ? d : -d;
}

namespace {

// Rows y^s f for s = shifts-1..0 written against powers top..0.
void push_shifted_rows(std::vector<std::vector<UPoly>>& rows, const BiPoly& f, int shifts, int top) {
  for (int s = shifts - 1; s >= 0; --s) {
    std::vector<UPoly> row(static_cast<std::size_t>(top) + 1);
    for (int j = 0; j <= f.deg_y(); ++j) row[static_cast<std::size_t>(top - (j + s))] = f.coeffs[j];
    rows.push_back(std::move(row));
  }
}

}  // namespace

UPoly resultant_y(const BiPoly& f, const BiPoly& g) {
  const int m = f.deg_y(), n = g.deg_y();
  if (m < 1 || n < 1) throw std::invalid_argument("resultant needs positive y-degrees");
  const int size = m + n;
  std::vector<std::vector<UPoly>> rows;
  push_shifted_rows(rows, f, n, size - 1);
  push_shifted_rows(rows, g, m, size - 1);
  return poly_determinant(std::move(rows));
}

FirstSubresultant first_subresultant(const BiPoly& f, const BiPoly& g) {
  const int m = f.deg_y(), n = g.deg_y();
  if (m < 1 || n < 1) throw std::invalid_argument("subresultant needs positive y-degrees");
  if (n == 1) return {g.coeffs[1], g.coeffs[0]};
  if (m == 1) return {f.coeffs[1], f.coeffs[0]};
  // rows y^(n-2) f .. f, y^(m-2) g .. g against powers m+n-2 .. 0
  const int top = m + n - 2;
  std::vector<std::vector<UPoly>> rows;
  push_shifted_rows(rows, f, n - 1, top);
  push_shifted_rows(rows, g, m - 1, top);
  // keep powers top..2 and then power 1 (s11) or power 0 (s10)
  auto build = [&](int last_power) {
    std::vector<std::vector<UPoly>> sq;
    for (const auto& r : rows) {
      std::vector<UPoly> row(r.begin(), r.begin() + (top - 1));
      row.push_back(r[static_cast<std::size_t>(top - last_power)]);
      sq.push_back(std::move(row));
    }
    return sq;
  };
  return {poly_determinant(build(1)), poly_determinant(build(0))};
}

}  // namespace fnx

#include "fnx/gale/gale.hpp"

#include <algorithm>

#include "fnx/core/errors.hpp"
#include "fnx/count/count.hpp"
#include "fnx/count/gale_count.hpp"

namespace fnx {

LinearForm GaleDual::form(std::size_t i) const {
  LinearForm f{B(i, 0), RatVector(static_cast<std::size_t>(k()))};
  for (int l = 0; l < k(); ++l) f.c[static_cast<std::size_t>(l)] = B(i, static_cast<std::size_t>(l) + 1);
  return f;
}

std::vector<LinearForm> GaleDual::forms() const {
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < B.rows(); ++i) out.push_back(form(i));
  return out;
}

bool GaleSystem::in_delta(const RealVector& y) const {
  return std::all_of(delta.begin(), delta.end(), [&](const LinearForm& f) { return f.eval(y) > 0; });
}

RealVector GaleSystem::log_residuals(const RealVector& y) const {
  const std::size_t rows = dual.A.rows();
  RealVector logs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Real v = dual.form(i).eval(y);
    if (v <= 0) throw DomainError("point outside the polyhedron");
    logs[i] = boost::multiprecision::log(v);
  }
  RealVector out(static_cast<std::size_t>(k()), Real(0));
  for (std::size_t j = 0; j < out.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (dual.A(i, j) != 0) out[j] += to_real(dual.A(i, j)) * logs[i];
  return out;
}

namespace {

// Column scaled to coprime integers.
std::vector<Integer> integer_column(const Matrix& a, std::size_t j) {
  Integer l = 1, g = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
  std::vector<Integer> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational s = a(i, j) * Rational(l);
    out[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace

SparsePoly GaleSystem::polynomial_equation(std::size_t j) const {
  const int kk = k();
  SparsePoly num = SparsePoly::constant(kk, 1), den = SparsePoly::constant(kk, 1);
  auto e = integer_column(dual.A, j);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!Integer(abs(e[i])).fits_uint_p()) throw std::overflow_error("Gale exponent too large");
    auto f = dual.form(i);
    SparsePoly lin = SparsePoly::linear(f.c0, f.c);
    if (e[i] > 0) {
      num = num * lin.pow(static_cast<unsigned>(e[i].get_ui()));
    } else {
      Integer m = -e[i];
      den = den * lin.pow(static_cast<unsigned>(m.get_ui()));
    }
  }
  return num - den;
}

Matrix gale_exponents(const Support& w) {
  Matrix e = w.exponent_matrix();
  if (static_cast<int>(rank(e)) < w.n) throw SpanError("exponent vectors do not span R^n");
  return kernel_basis(e);
}

DiagonalForm diagonalize(const FewnomialSystem& sys) {
  const int n = sys.n;
  const int k = sys.support.k();
  if (static_cast<int>(sys.coeffs.rows()) != n || sys.coeffs.cols() != sys.support.size())
    throw DimensionError("coefficient matrix does not match the support");
  std::vector<std::size_t> block, rest{0};
  for (int i = 1; i <= n; ++i) block.push_back(static_cast<std::size_t>(i));
  for (int j = 1; j <= k; ++j) rest.push_back(static_cast<std::size_t>(n + j));
  auto inv = inverse(sys.coeffs.select_cols(block));
  if (!inv) throw SingularError("coefficient block of z^{w_1}..z^{w_n} is singular");
  Matrix p = *inv * sys.coeffs.select_cols(rest);
  DiagonalForm d;
  d.n = n;
  d.k = k;
  for (int i = 0; i < n; ++i) {
    LinearForm f{-p(i, 0), RatVector(static_cast<std::size_t>(k))};
    for (int j = 0; j < k; ++j) f.c[j] = -p(i, j + 1);
    d.p.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < sys.support.size(); ++i) d.ordering.push_back(i);
  return d;
}

Diagonalization diagonalize_system(const FewnomialSystem& sys, std::uint64_t seed, const Rational& rel) {
  Diagonalization out;
  out.normalized = normalize_support(sys);
  try {
    out.diagonal = diagonalize(out.normalized.system);
  } catch (const SingularError&) {
    Rng rng(seed);
    FewnomialSystem& s = out.normalized.system;
    const FewnomialSystem original = s;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 50) throw SingularError("perturbation did not make the coefficient block invertible");
      s = original;
      for (std::size_t i = 0; i < s.coeffs.rows(); ++i) {
        Rational scale = 0;
        for (std::size_t j = 0; j < s.coeffs.cols(); ++j) scale = std::max(scale, Rational(abs(s.coeffs(i, j))));
        if (scale == 0) scale = 1;
        for (std::size_t j = 0; j < s.coeffs.cols(); ++j)
          s.coeffs(i, j) += rel * scale * (rng.rational(1000, 1) / 1000);
      }
      try {
        out.diagonal = diagonalize(s);
        break;
      } catch (const SingularError&) {
      }
    }
    out.perturbed = true;
    out.diagonal.perturbed = true;
    out.notes = "singular coefficient block; coefficients perturbed at relative size " + to_string(rel);
  }
  out.diagonal.ordering = out.normalized.permutation;
  return out;
}

GaleSystem build_gale_system(const DiagonalForm& d, const Matrix& a, ZeroRowPolicy policy) {
  const std::size_t rows = static_cast<std::size_t>(d.n + d.k);
  if (a.rows() != rows || a.cols() != static_cast<std::size_t>(d.k))
    throw DimensionError("relation matrix has the wrong shape");
  GaleSystem g;
  g.dual.A = a;
  g.dual.B = Matrix(rows, static_cast<std::size_t>(d.k) + 1);
  for (int i = 0; i < d.n; ++i) {
    g.dual.B(i, 0) = d.p[i].c0;
    for (int j = 0; j < d.k; ++j) g.dual.B(i, j + 1) = d.p[i].c[j];
  }
  for (int j = 0; j < d.k; ++j) g.dual.B(d.n + j, j + 1) = 1;
  g.dual.perm = d.ordering;
  for (std::size_t i = 0; i < rows; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < a.cols(); ++j) zero = zero && a(i, j) == 0;
    if (zero) g.dual.zero_rows.push_back(i);
  }
  if (!g.dual.zero_rows.empty() && policy == ZeroRowPolicy::Error)
    throw ZeroRowError("relation matrix has a zero row");
  g.dual.N = static_cast<long>(rows - g.dual.zero_rows.size());
  g.dual.nW = g.dual.N - d.k;
  // a zero row drops out of the equations but its form still bounds the domain
  g.delta = g.dual.forms();
  return g;
}

GaleSystem gale_system_of(const Diagonalization& d) {
  return build_gale_system(d.diagonal, gale_exponents(d.normalized.support));
}

RealVector phi_V(const RealVector& z, const Support& w) {
  const int n = w.n, k = w.k();
  if (static_cast<int>(z.size()) != n) throw DimensionError("point has the wrong dimension");
  RealVector logs;
  for (const auto& x : z) {
    if (x <= 0) throw DomainError("phi_V needs a strictly positive point");
    logs.push_back(boost::multiprecision::log(at_precision(x)));
  }
  RealVector y;
  for (int j = 1; j <= k; ++j) {
    Real e = 0;
    for (int l = 0; l < n; ++l) e += to_real(w.points[n + j][l]) * logs[l];
    y.push_back(boost::multiprecision::exp(e));
  }
  return y;
}

RealVector invert_phi(const RealVector& y, const DiagonalForm& d, const Support& w, unsigned precision_bits) {
  PrecisionGuard guard(precision_bits);
  const int n = d.n, k = d.k;
  RealVector yy = at_precision(y);
  RealVector logm;
  for (int i = 0; i < n; ++i) {
    Real v = d.p[i].eval(yy);
    if (v <= 0) throw DomainError("y is outside the polyhedron");
    logm.push_back(boost::multiprecision::log(v));
  }
  for (int j = 0; j < k; ++j) {
    if (yy[j] <= 0) throw DomainError("y is outside the polyhedron");
    logm.push_back(boost::multiprecision::log(yy[j]));
  }
  // rows w_{k+1}..w_{n+k} are independent
  Matrix last(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) last(i, l) = w.points[k + 1 + i][l];
  auto inv = inverse(last);
  if (!inv) throw SingularError("last n exponent vectors are dependent; support not normalized");
  RealVector s(static_cast<std::size_t>(n), Real(0));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i) s[l] += to_real((*inv)(l, i)) * logm[k + i];
  const Real tol = boost::multiprecision::pow(Real(10), -static_cast<int>(Real::default_precision()) / 2);
  for (int i = 0; i < n + k; ++i) {
    Real e = 0;
    for (int l = 0; l < n; ++l) e += to_real(w.points[i + 1][l]) * s[l];
    if (boost::multiprecision::abs(e - logm[i]) > tol * (1 + boost::multiprecision::abs(logm[i])))
      throw ConsistencyError("log-linear system is inconsistent; y is not a Gale solution");
  }
  RealVector z;
  for (auto& v : s) z.push_back(boost::multiprecision::exp(v));
  return z;
}

namespace {

Real relative_distance(const RealVector& a, const RealVector& b) {
  Real d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, Real(boost::multiprecision::abs(a[i] - b[i]) / (1 + boost::multiprecision::abs(b[i]))));
  return d;
}

}  // namespace

BijectionReport verify_bijection(const FewnomialSystem& sys, std::uint64_t seed) {
  BijectionReport rep;
  const auto diag = diagonalize_system(sys, seed);
  const auto gs = gale_system_of(diag);
  const auto& src = diag.normalized.system;
  const auto& w = diag.normalized.support;
  rep.perturbed = diag.perturbed;
  rep.nW = gs.dual.nW;
  rep.notes = diag.notes;
  if (gs.k() > 2) throw SizeError("Gale side is counted exactly only for k <= 2");
  PrecisionGuard guard(default_precision_bits());

  CountReport source;
  rep.exact = sys.n <= 2;
  if (rep.exact) {
    source = count_system_exact(src, seed);
  } else {
    source = newton_census(src, 4000, seed, 6.0);
  }
  CountReport gale = count_gale_in_delta(gs, seed);
  rep.source_count = source.count;
  rep.gale_count = gale.count;
  rep.counts_equal = source.count == gale.count;

  std::vector<RealVector> images;
  for (const auto& s : source.solutions) {
    RealVector y = phi_V(s.point, w);
    if (!gs.in_delta(y)) {
      rep.matched = false;
      continue;
    }
    for (const auto& r : gs.log_residuals(y)) rep.max_residual = std::max(rep.max_residual, Real(boost::multiprecision::abs(r)));
    for (const auto& prev : images)
      if (relative_distance(prev, y) < Real("1e-20")) rep.injective = false;
    bool found = false;
    for (const auto& g : gale.solutions)
      if (relative_distance(g.point, y) < Real("1e-10")) found = true;
    rep.matched = rep.matched && found;
    images.push_back(std::move(y));
  }
  // and back: every Gale solution lifts to a source solution
  for (const auto& g : gale.solutions) {
    try {
      RealVector z = invert_phi(g.point, diag.diagonal, w, default_precision_bits());
      RealVector r = eval_system(src, z, default_precision_bits());
      Real scale = 0;
      for (std::size_t i = 0; i < src.coeffs.rows(); ++i)
        for (std::size_t j = 0; j < src.coeffs.cols(); ++j) scale = std::max(scale, Real(boost::multiprecision::abs(to_real(src.coeffs(i, j)))));
      for (const auto& v : r)
        if (boost::multiprecision::abs(v) > Real("1e-10") * (1 + scale)) rep.matched = false;
    } catch (const ConsistencyError&) {
      rep.matched = false;
    }
  }
  if (!rep.exact && !rep.counts_equal)
    throw InconclusiveError("numeric source count " + std::to_string(source.count) + " differs from Gale count " +
                            std::to_string(gale.count));
  return rep;
}

Matrix random_invertible(std::size_t k, Rng& rng, long num_bound, long den_bound) {
  while (true) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = rng.rational(num_bound, den_bound);
    if (determinant(m) != 0) return m;
  }
}

Json gale_dual_to_json(const GaleDual& g) {
  Json j;
  j["A"] = to_json(g.A);
  j["B"] = to_json(g.B);
  j["perm"] = g.perm;
  j["nW"] = g.nW;
  return j;
}

GaleDual gale_dual_from_json(const Json& j) {
  for (const char* key : {"A", "B", "perm", "nW"})
    if (!j.contains(key)) throw ParseError(std::string("Gale dual is missing \"") + key + "\"");
  GaleDual g;
  g.A = matrix_from_json(j["A"]);
  g.B = matrix_from_json(j["B"]);
  if (g.B.rows() != g.A.rows() || g.B.cols() != g.A.cols() + 1) throw ParseError("A and B shapes disagree");
  try {
    g.perm = j["perm"].get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad perm: ") + e.what());
  }
  for (std::size_t i = 0; i < g.A.rows(); ++i) {
    bool zero = true;
    for (std::size_t c = 0; c < g.A.cols(); ++c) zero = zero && g.A(i, c) == 0;
    if (zero) g.zero_rows.push_back(i);
  }
  g.N = static_cast<long>(g.A.rows() - g.zero_rows.size());
  g.nW = g.N - static_cast<long>(g.A.cols());
  if (!j["nW"].is_number_integer() || j["nW"].get<long>() != g.nW) throw ParseError("nW does not match A");
  return g;
}

}  // namespace fnx

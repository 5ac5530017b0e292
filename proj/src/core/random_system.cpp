#include "fnx/core/random_system.hpp"

#include <algorithm>

#include "fnx/core/errors.hpp"

namespace fnx {

FewnomialSystem random_integer_system(int n, int k, Rng& rng, int max_exp, long coeff_bound) {
  const std::size_t m = static_cast<std::size_t>(n + k + 1);
  if (n < 1 || k < 0 || max_exp < 1) throw RangeError("random system needs n >= 1, k >= 0, max_exp >= 1");
  // widen the box when it cannot hold the support
  auto cells = [&] {
    long c = 1;
    for (int i = 0; i < n; ++i) c *= max_exp + 1;
    return c;
  };
  while (cells() < static_cast<long>(m)) ++max_exp;
  FewnomialSystem s;
  s.n = n;
  s.support.n = n;
  do {
    s.support.points.clear();
    while (s.support.points.size() < m) {
      RatVector p(static_cast<std::size_t>(n));
      for (auto& x : p) x = rng.uniform_int(0, max_exp);
      if (std::find(s.support.points.begin(), s.support.points.end(), p) == s.support.points.end())
        s.support.points.push_back(std::move(p));
    }
  } while (affine_dimension(s.support.points) < n);
  s.coeffs = Matrix(static_cast<std::size_t>(n), m);
  for (int i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) s.coeffs(i, j) = rng.nonzero_int(coeff_bound);
  return s;
}

}  // namespace fnx

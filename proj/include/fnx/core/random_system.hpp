#pragma once

#include "fnx/core/rng.hpp"
#include "fnx/core/support.hpp"

namespace fnx {

// n+k+1 distinct integer points of [0, max_exp]^n (the box grows when too small) spanning R^n affinely,
// with nonzero integer coefficients in [-coeff_bound, coeff_bound].
FewnomialSystem random_integer_system(int n, int k, Rng& rng, int max_exp = 2, long coeff_bound = 9);

}  // namespace fnx

#pragma once

#include <cstdint>

#include "fnx/count/count.hpp"
#include "fnx/gale/gale.hpp"

namespace fnx {

// Solutions of a Gale system strictly inside its polyhedron, exact for k <= 2.
// Each equation is cleared to prod_{a>0} p_i^a - prod_{a<0} p_i^{-a} = 0 with
// integer exponents; inside the polyhedron this has the same solutions.
CountReport count_gale_in_delta(const GaleSystem& g, std::uint64_t seed = 0);

}  // namespace fnx

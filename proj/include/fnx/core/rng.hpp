#pragma once

#include <cstdint>
#include <random>

#include "fnx/core/rational.hpp"

namespace fnx {

// The single seeded generator every randomized routine draws from.
// Draws avoid std distributions so sequences are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  // Nonzero integer in [-bound, bound].
  long nonzero_int(long bound) {
    long v = uniform_int(1, bound);
    return (engine_() & 1) ? v : -v;
  }

  // Rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(long num_bound, long den_bound) {
    Rational r(Integer(uniform_int(-num_bound, num_bound)), Integer(uniform_int(1, den_bound)));
    r.canonicalize();
    return r;
  }

  // A derived generator, independent of later draws from this one.
  Rng split() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace fnx

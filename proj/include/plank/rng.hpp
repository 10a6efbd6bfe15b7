// rng.hpp - deterministic random source
//
// Generator: SplitMix64 (Steele, Lea, Flood 2014). The 64-bit state advances
// by the fixed increment 0x9E3779B97F4A7C15; outputs are mixed with the
// constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. The sequence depends
// only on the seed, so identical seeds reproduce identical draws on every
// platform. Normals come from Box-Muller over the 53-bit uniform, which keeps
// unit-sphere sampling reproducible as well (std::normal_distribution is
// implementation-defined and would not be).
#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "plank/complex_ops.hpp"

namespace plank {

class RngState {
 public:
  explicit RngState(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // independent standard normal pair (Box-Muller)
  std::pair<double, double> normal_pair() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * uniform01();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::uint64_t state_;
};

// Uniform draw from the unit sphere of C^d: 2d independent N(0,1) reals fill
// the real/imaginary parts (one Box-Muller pair per coordinate), then the
// vector is normalized. The zero-vector event resamples.
inline CVector rand_unit_vector(std::size_t d, RngState& rng) {
  if (d < 1) throw WrongDimension("rand_unit_vector: d must be >= 1");
  CVector v(d);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) {
      const auto [re, im] = rng.normal_pair();
      v[i] = Complex(re, im);
    }
    if (norm(v) > kZeroNormFloor) return normalize(v);
  }
}

}  // namespace plank

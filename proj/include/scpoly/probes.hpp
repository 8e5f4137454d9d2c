#pragma once

#include <cstdint>
#include <vector>

#include "scpoly/grid_function.hpp"

// Seeded, platform-independent probe generators.  All randomized suites draw
// from ProbeRng so that outputs are byte-identical for a fixed seed.

namespace sc {

class ProbeRng {
 public:
  explicit ProbeRng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// Smooth band-limited bump: windowed sum of a few low-frequency cosines per
// component; compactly supported in |t| <= support_radius, max frequency
// max_freq.  Used as the generic probe direction.
GridFunction band_limited_bump(ProbeRng& rng, int dim, double half_width, double spacing,
                               double support_radius = 6.0, double max_freq = 2.0);

// Rough direction n^{-1} sin(n t) windowed; C^1 size ~ 1, C^2 size ~ n.
GridFunction rough_direction(int n, int dim, double half_width, double spacing,
                             double support_radius = 6.0);

// Gaussian bump with random center/width/amplitude (smooth, decaying tails).
GridFunction gaussian_bump(ProbeRng& rng, int dim, double half_width, double spacing);

// Fixed probe family: `smooth_count` band-limited bumps followed by
// `rough_count` rough directions with n = 2,4,6,...
std::vector<GridFunction> probe_family(std::uint64_t seed, int dim, double half_width,
                                       double spacing, int smooth_count, int rough_count);

}  // namespace sc

#include "scpoly/probes.hpp"

#include <cmath>

#include "scpoly/cutoffs.hpp"

namespace sc {

GridFunction band_limited_bump(ProbeRng& rng, int dim, double half_width, double spacing,
                               double support_radius, double max_freq) {
  struct Wave {
    double amp, freq, phase;
  };
  std::vector<std::vector<Wave>> waves(dim);
  for (int j = 0; j < dim; ++j) {
    const int count = rng.uniform_int(2, 4);
    for (int c = 0; c < count; ++c)
      waves[j].push_back({rng.uniform(-1.0, 1.0), rng.uniform(0.2, max_freq),
                          rng.uniform(0.0, 6.283185307179586)});
  }
  auto f = [&](double t) {
    Vector v(dim);
    const double win = gaussian_window(t, support_radius);
    for (int j = 0; j < dim; ++j) {
      double acc = 0.0;
      for (const auto& w : waves[j]) acc += w.amp * std::cos(w.freq * t + w.phase);
      v[j] = win * acc;
    }
    return v;
  };
  return GridFunction::sample(half_width, spacing, f, Vector::Zero(dim), Vector::Zero(dim));
}

GridFunction rough_direction(int n, int dim, double half_width, double spacing,
                             double support_radius) {
  auto f = [&](double t) {
    Vector v = Vector::Zero(dim);
    v[0] = gaussian_window(t, support_radius) * std::sin(n * t) / n;
    return v;
  };
  return GridFunction::sample(half_width, spacing, f, Vector::Zero(dim), Vector::Zero(dim));
}

GridFunction gaussian_bump(ProbeRng& rng, int dim, double half_width, double spacing) {
  struct Shape {
    double amp, center, width;
  };
  std::vector<Shape> shapes(dim);
  for (int j = 0; j < dim; ++j)
    shapes[j] = {rng.uniform(-1.0, 1.0), rng.uniform(-4.0, 4.0), rng.uniform(0.5, 2.0)};
  auto f = [&](double t) {
    Vector v(dim);
    for (int j = 0; j < dim; ++j) {
      const double z = (t - shapes[j].center) / shapes[j].width;
      v[j] = std::abs(z) < 8.8 ? shapes[j].amp * std::exp(-0.5 * z * z) : 0.0;
    }
    return v;
  };
  return GridFunction::sample(half_width, spacing, f, Vector::Zero(dim), Vector::Zero(dim));
}

std::vector<GridFunction> probe_family(std::uint64_t seed, int dim, double half_width,
                                       double spacing, int smooth_count, int rough_count) {
  ProbeRng rng(seed);
  std::vector<GridFunction> out;
  out.reserve(smooth_count + rough_count);
  for (int i = 0; i < smooth_count; ++i)
    out.push_back(band_limited_bump(rng, dim, half_width, spacing));
  for (int i = 0; i < rough_count; ++i)
    out.push_back(rough_direction(2 * (i + 1), dim, half_width, spacing));
  return out;
}

}  // namespace sc

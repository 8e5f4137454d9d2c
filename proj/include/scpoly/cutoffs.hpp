#pragma once

#include <cmath>

// Smooth cutoff functions used throughout: the interpolation cutoff beta
// (1 on (-inf,-1], 0 on [1,inf)), the odd weight cutoff beta_w (=-1 / +1
// outside [-1,1]), and a compactly supported unit bump.  All are built from
// q(x) = exp(-1/x) so that the support conditions hold exactly and all
// derivatives vanish identically at the transition endpoints.

namespace sc {

// q(x) = exp(-1/x) for x > 0, else 0.
inline double mollifier_q(double x) {
  return x > 0.0 ? std::exp(-1.0 / x) : 0.0;
}

// q'(x) = q(x)/x^2 for x > 0, else 0.
inline double mollifier_q_prime(double x) {
  return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
}

// beta(t) = q(1-t) / (q(1-t)+q(1+t)); beta == 1 for t <= -1, beta == 0 for
// t >= 1, monotone nonincreasing, C^infinity.
inline double cutoff_beta(double t) {
  if (t <= -1.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = mollifier_q(1.0 - t);
  const double b = mollifier_q(1.0 + t);
  return a / (a + b);
}

// d/dt beta(t); supported in (-1,1).  beta'(0) = -1/2 exactly.
inline double cutoff_beta_prime(double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  const double a = mollifier_q(1.0 - t);
  const double b = mollifier_q(1.0 + t);
  const double da = -mollifier_q_prime(1.0 - t);
  const double db = mollifier_q_prime(1.0 + t);
  const double s = a + b;
  return (da * s - a * (da + db)) / (s * s);
}

// Odd weight cutoff beta_w(s) = 2*beta(-s) - 1.  Exactly odd since
// beta(s) + beta(-s) = 1; equals +1 on [1,inf), -1 on (-inf,-1].
inline double weight_cutoff(double s) { return 2.0 * cutoff_beta(-s) - 1.0; }

inline double weight_cutoff_prime(double s) { return -2.0 * cutoff_beta_prime(-s); }

// The weight exponent w(s) = s * beta_w(s) and its derivative; e^{delta w}
// is the exponential weight of the Sobolev ladder.  w(s) -> |s| for |s| >= 1
// and w'(s) -> sign(s).
inline double weight_exponent(double s) { return s * weight_cutoff(s); }

inline double weight_exponent_prime(double s) {
  return weight_cutoff(s) + s * weight_cutoff_prime(s);
}

// Compactly supported bump on (-1,1), positive, C^infinity, not normalized.
inline double unit_bump(double s) {
  const double r = 1.0 - s * s;
  return r > 0.0 ? std::exp(-1.0 / r) : 0.0;
}

// Smooth window equal to 1 on |t| <= radius-2 and 0 on |t| >= radius.
inline double support_window(double t, double radius) {
  return cutoff_beta(std::abs(t) - (radius - 1.0));
}

// Gaussian window with a hard floor: decays to ~1e-17 by |t| = radius and is
// exactly zero beyond.  Unlike the q-based cutoffs its spectrum is below
// roundoff at every frequency the grids in use can represent, so probe
// directions built from it survive spectral differentiation cleanly.
inline double gaussian_window(double t, double radius) {
  const double z = t / radius;
  if (std::abs(z) >= 1.0) return 0.0;
  return std::exp(-39.1 * z * z);
}

}  // namespace sc

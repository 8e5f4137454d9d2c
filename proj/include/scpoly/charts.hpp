#pragma once

#include <optional>

#include "scpoly/morse.hpp"
#include "scpoly/scale_space.hpp"

// Local slices for the shift action and the chart maps they induce on
// trajectory spaces.  A slice pins the value at time 0 to a hyperplane
// transverse to the reference path; to_chart normalizes any nearby path to
// its unique slice representative.

namespace sc {

struct LocalSlice {
  GridFunction reference;   // psi, with psi'(0) != 0
  Vector normal;            // psi'(0)
  Vector center;            // psi(0)
  double radius = 0.5;      // admissible chart ball in the level-0 norm
  double window = 1.0;      // admissible shift window delta_w

  static constexpr double kSliceFloor = 1e-3;

  // Builds the slice from a reference path; the radius is half the distance
  // to loss of transversality along the reference, found by scan.
  static LocalSlice from_reference(const GridFunction& psi, double window = 1.0);

  // <normal, u(0)>: the linear slice condition on perturbations.
  double condition(const GridFunction& u) const;

  // Exact rank-one correction making <normal, u(0)> = 0: subtracts the
  // normal component carried by a gaussian bump centered at 0.
  GridFunction project(const GridFunction& u) const;
};

struct ChartPoint {
  const LocalSlice* slice = nullptr;
  GridFunction perturbation;  // u with <normal, u(0)> = 0

  GridFunction path() const { return slice->reference + perturbation; }
};

struct FindShiftError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solves <normal, gamma(s) - psi(0)> = 0 for s near s_seed by safeguarded
// Newton with bisection fallback; |residual| < 1e-12 at the root.
// Throws FindShiftError when no sign change exists in the window or the
// slope falls below the slice floor (non-transverse crossing).
double find_shift(const GridFunction& gamma, const LocalSlice& slice, double s_seed = 0.0);

// Normalizes gamma into the slice: u = shift(s_gamma, gamma) - psi with the
// slice condition re-projected to exactly zero.
ChartPoint to_chart(const GridFunction& gamma, const LocalSlice& slice, double s_seed = 0.0);

// Chart transition: the slice-2 representative of the trajectory class of
// psi_1 + u.
ChartPoint transition(const ChartPoint& u, const LocalSlice& target);

}  // namespace sc

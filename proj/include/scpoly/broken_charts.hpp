#pragma once

#include "scpoly/gluing.hpp"

// Chart maps for the union of broken and unbroken trajectories: a retract
// point with v > 0 represents the preglued path, a point with v = 0 the
// broken pair.  Transitions between pregluing charts recompute the gluing
// parameter through the profile and re-solve both slice conditions.

namespace sc {

struct BrokenChartImage {
  bool broken = false;
  GridFunction glued;          // unbroken representative (v > 0, coupled band)
  GridFunction left, right;    // the pair of component paths (v = 0)
  double v = 0.0;
};

// Requires x in the retract (antigluing below tol for v > 0); v > 0 in the
// coupled band maps to the preglued path, v = 0 to the pair.  In the
// decoupled band the grid cannot carry the glued representative and the
// image is reported as the pair together with its gluing parameter.
BrokenChartImage broken_chart(const GluingSetup& setup, const GluedTriple& x,
                              double retract_tol = 1e-8);

// Chart inverse on unbroken images: recovers the retract coordinates of a
// glued path at parameter v by antigluing-free reconstruction and slice
// normalization.
GluedTriple from_glued_path(const GluingSetup& setup, double v, const GridFunction& glued);

struct TransitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Transition between pregluing charts: new parameter mu^{-1}(mu(v) + s(u) +
// t(w)) and new slice representatives; v = 0 transitions component-wise and
// stays at v = 0.  Throws TransitionError when the new parameter leaves
// [0, v0) or a slice cannot be solved.
GluedTriple broken_transition(const GluingSetup& from, const GluingSetup& to,
                              const GluedTriple& x);

}  // namespace sc

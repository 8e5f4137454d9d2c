#pragma once

#include <utility>
#include <vector>

#include "scpoly/charts.hpp"
#include "scpoly/scale_space.hpp"

// Pregluing and antigluing of half-trajectories, the induced retraction on
// (gluing parameter, slice perturbation, slice perturbation) triples, the toy
// splicing core, and the degeneracy index of sector points.
//
// The exponential gluing profile R_v = e^{1/v} - e grows so fast that only a
// narrow band of parameters produces necks that fit on the grid.  Beyond the
// split radius the antigluing contributions vanish identically at grid
// resolution, the retraction acts as the identity, and glued objects are
// numerically indistinguishable from broken pairs.

namespace sc {

struct GluingProfile {
  double v0 = 0.35;

  double neck(double v) const;     // R_v = e^{1/v} - e, v in (0, v0]; inf at v = 0
  double v_of_neck(double r) const;  // inverse: 1 / log(r + e)

  void validate() const;  // strictly decreasing on samples, R(v0) > 4
};

struct GluedTriple {
  double v = 0.0;   // gluing parameter; 0.0 is the exact boundary tag
  GridFunction u;   // perturbation in the left slice
  GridFunction w;   // perturbation in the right slice
};

struct GluingSetup {
  LocalSlice left;    // slice around phi: a -> b
  LocalSlice right;   // slice around psi: b -> c
  Vector middle;      // the matching value b
  GluingProfile profile;
  double split_neck = 0.0;  // R beyond which the grid sees exact decoupling

  static GluingSetup make(const GridFunction& phi, const GridFunction& psi,
                          GluingProfile profile = {});

  double tail_tol = 1e-6;

  // slice conditions within tol and v in [0, v0)
  void validate_triple(const GluedTriple& x, double tol = 1e-10) const;

  GridFunction left_path(const GluedTriple& x) const { return left.reference + x.u; }
  GridFunction right_path(const GluedTriple& x) const { return right.reference + x.w; }
};

// beta u_a(. + R/2) + (1-beta) u_b(. - R/2).  Requires matching limits at
// the breaking point and 2 <= R <= 2(T-2) so the transition regions stay on
// the grid.
GridFunction preglue(double R, const GridFunction& gamma_a, const GridFunction& gamma_b,
                     double tail_tol = 1e-6);

// Complementary combination (beta-1)(u_a(.+R/2)-m) + beta (u_b(.-R/2)-m)
// relative to the matching value m; decays to 0 at both ends.
GridFunction antiglue(double R, const GridFunction& gamma_a, const GridFunction& gamma_b,
                      double tail_tol = 1e-6);

std::pair<GridFunction, GridFunction> boxglue(double R, const GridFunction& gamma_a,
                                              const GridFunction& gamma_b,
                                              double tail_tol = 1e-6);

// Exact inverse of boxglue: pointwise 2x2 solve against the cutoff matrix,
// then the opposite shifts.  Limits of the reconstructed pair are
// (left_a, middle) and (middle, right_b).
std::pair<GridFunction, GridFunction> boxglue_inverse(double R, const GridFunction& glued,
                                                      const GridFunction& anti,
                                                      const Vector& left_a, const Vector& middle,
                                                      const Vector& right_b);

// min over grid nodes of beta^2 + (1-beta)^2 (>= 1/2 analytically).
double cutoff_matrix_min_determinant(const GridFunction& grid_like);

// r(v,u,w): identity at v = 0 and in the decoupled band; otherwise
// boxglue_inverse of (preglue, 0) re-expressed in slice coordinates.
GluedTriple retract(const GluingSetup& setup, const GluedTriple& x);

// Level-0 norm of the antigluing component of x (0 by definition at v = 0
// and in the decoupled band).
double antiglue_norm(const GluingSetup& setup, const GluedTriple& x);

// Distance between triples: sqrt(dv^2 + ||du||_0^2 + ||dw||_0^2); this is
// the ambient-sector chart metric, the v-coordinate included.
double triple_distance(const GluedTriple& a, const GluedTriple& b);

struct TangentVector {
  double dv = 0.0;
  GridFunction du;
  GridFunction dw;
};

struct TangentRetractReport {
  double projection_defect = 0.0;  // max ||Dr(Dr z) - Dr z|| over probes
  int rank = 0;                    // rank of [Dr z_j] on the probe basis
  int probe_count = 0;
  bool identity_on_probes = false;
};

// Fixed probe basis: one gluing-parameter direction, independent-slot bumps,
// and antiglue-type pairs manufactured at the supplied neck length so that
// the retraction kernel is visible in the span.
std::vector<TangentVector> tangent_probe_basis(const GluingSetup& setup, double neck,
                                               std::uint64_t seed = 99);

// Finite-difference linearization of the retraction applied to the probes.
TangentRetractReport tangent_retract(const GluingSetup& setup, const GluedTriple& x,
                                     const std::vector<TangentVector>& probes);

struct SplicingCorePoint {
  double t = 0.0;
  GridFunction e;  // projected function: 0 for t <= 0, multiple of beta_t else
};

// L^2 projection onto span of beta_t = bump(e^{1/t} + .) for t > 0; zero map
// for t <= 0.  The projector has operator norm 1 wherever beta_t is visible
// on the grid.
SplicingCorePoint splicing_core(double t, const GridFunction& e);

// ||pi_t e|| and the grid-visible norm of beta_t (diagnostics for the
// joint-continuity-at-0 samples).
struct SplicingDiagnostics {
  double projected_norm = 0.0;
  double generator_norm = 0.0;  // L^2 norm of beta_t restricted to the grid
};
SplicingDiagnostics splicing_diagnostics(double t, const GridFunction& e);

// Number of exact zeros among the sector coordinates; throws on negative
// coordinates.
int degeneracy_index(const Vector& sector_coords);

}  // namespace sc

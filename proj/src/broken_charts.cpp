#include "scpoly/broken_charts.hpp"

#include <cmath>

namespace sc {

BrokenChartImage broken_chart(const GluingSetup& setup, const GluedTriple& x,
                              double retract_tol) {
  BrokenChartImage img;
  img.v = x.v;
  if (x.v == 0.0) {
    img.broken = true;
    img.left = setup.left_path(x);
    img.right = setup.right_path(x);
    return img;
  }
  if (antiglue_norm(setup, x) > retract_tol)
    throw std::invalid_argument("broken_chart: point not in the retract");
  const double R = setup.profile.neck(x.v);
  if (R > setup.split_neck) {
    img.broken = true;  // glued representative not carried by the grid
    img.left = setup.left_path(x);
    img.right = setup.right_path(x);
    return img;
  }
  img.broken = false;
  img.glued = preglue(R, setup.left_path(x), setup.right_path(x), setup.tail_tol);
  return img;
}

GluedTriple from_glued_path(const GluingSetup& setup, double v, const GridFunction& glued) {
  if (!(v > 0.0)) throw std::invalid_argument("from_glued_path: needs v > 0");
  const double R = setup.profile.neck(v);
  if (R > setup.split_neck)
    throw std::invalid_argument("from_glued_path: neck beyond the grid band");
  const GridFunction zero_anti =
      GridFunction::zero(glued.dim(), glued.half_width(), glued.spacing());
  auto [ga, gb] = boxglue_inverse(R, glued, zero_anti, setup.left.reference.left_limit(),
                                  setup.middle, setup.right.reference.right_limit());
  GluedTriple out;
  out.v = v;
  out.u = setup.left.project(ga - setup.left.reference);
  out.w = setup.right.project(gb - setup.right.reference);
  return out;
}

GluedTriple broken_transition(const GluingSetup& from, const GluingSetup& to,
                              const GluedTriple& x) {
  const GridFunction ga = from.left_path(x);
  const GridFunction gb = from.right_path(x);

  double s_u = 0.0, t_w = 0.0;
  ChartPoint cu, cw;
  try {
    s_u = find_shift(ga, to.left);
    t_w = find_shift(gb, to.right);
    cu = to_chart(ga, to.left);
    cw = to_chart(gb, to.right);
  } catch (const FindShiftError& e) {
    throw TransitionError(std::string("broken_transition: out of overlap: ") + e.what());
  }

  GluedTriple out;
  if (x.v == 0.0) {
    // boundary stratum is preserved exactly
    out.v = 0.0;
    out.u = cu.perturbation;
    out.w = cw.perturbation;
    return out;
  }

  const double R = from.profile.neck(x.v);
  const double R_new = R + s_u + t_w;
  if (!(R_new > 0.0)) throw TransitionError("broken_transition: profile domain violated");
  const double v_new = to.profile.v_of_neck(R_new);
  if (v_new >= to.profile.v0)
    throw TransitionError("broken_transition: new gluing parameter outside [0, v0)");

  out.v = v_new;
  if (std::max(R, R_new) > std::min(from.split_neck, to.split_neck)) {
    // Decoupled band: the glued representative is the pair itself, so the
    // transition acts component-wise.
    out.u = cu.perturbation;
    out.w = cw.perturbation;
    return out;
  }

  const GridFunction glued = preglue(R, ga, gb, from.tail_tol);
  const GridFunction glued_shifted = shift(0.5 * (s_u + t_w), glued);
  GluedTriple recovered = from_glued_path(to, v_new, glued_shifted);
  out.u = recovered.u;
  out.w = recovered.w;
  return out;
}

}  // namespace sc

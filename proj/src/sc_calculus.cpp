#include "scpoly/sc_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace sc {

LevelPoint LevelPoint::make(Vector finite, std::vector<GridFunction> functions) {
  LevelPoint p;
  p.finite = std::move(finite);
  p.functions = std::move(functions);
  return p;
}

LevelPoint& LevelPoint::operator+=(const LevelPoint& other) {
  finite += other.finite;
  for (size_t i = 0; i < functions.size(); ++i) functions[i] = functions[i] + other.functions[i];
  return *this;
}

LevelPoint LevelPoint::operator+(const LevelPoint& other) const {
  LevelPoint p = *this;
  p += other;
  return p;
}

LevelPoint LevelPoint::operator-(const LevelPoint& other) const {
  return *this + other * (-1.0);
}

LevelPoint LevelPoint::operator*(double c) const {
  LevelPoint p = *this;
  p.finite *= c;
  for (auto& f : p.functions) f = f * c;
  return p;
}

double level_norm(const LevelPoint& p, const ScaleStructure& s, int k) {
  double total = p.finite.size() > 0 ? p.finite.norm() : 0.0;
  for (const auto& f : p.functions) total += weighted_norm(f, s.level(k));
  return total;
}

double leveled_consistency_check(const LeveledMap& f, const LevelPoint& x, int max_level) {
  double worst = 0.0;
  for (int k = 1; k <= max_level; ++k) {
    const LevelPoint hi = f.eval(k, x);
    const LevelPoint lo = f.eval(k - 1, x);
    worst = std::max(worst, level_norm(hi - lo, f.codomain_scale, k - 1));
  }
  return worst;
}

DirectionalDerivative directional_derivative(const LeveledMap& f, const TangentSample& t) {
  const double e1 = 1e-3, e2 = 1e-4;
  auto central = [&](double eps) {
    const LevelPoint plus = f.eval(t.level, t.base + t.direction * eps);
    const LevelPoint minus = f.eval(t.level, t.base + t.direction * (-eps));
    return (plus - minus) * (0.5 / eps);
  };
  const LevelPoint d1 = central(e1);
  const LevelPoint d2 = central(e2);
  DirectionalDerivative out;
  // both estimates are O(eps^2): Richardson with ratio 10
  out.value = (d2 * 100.0 - d1) * (1.0 / 99.0);
  out.extrapolation_gap = level_norm(d1 - d2, f.codomain_scale, t.level);
  const double scale = 1.0 + level_norm(d2, f.codomain_scale, t.level);
  out.converged = out.extrapolation_gap <= 1e2 * kDerivativeTol * scale;
  return out;
}

namespace {

std::vector<LevelPoint> probe_directions(const LeveledMap& f, const LevelPoint& shape,
                                         const Sc1Options& opts) {
  std::vector<LevelPoint> dirs;
  // finite-dimensional axes
  for (int i = 0; i < f.finite_dims; ++i) {
    LevelPoint p;
    p.finite = Vector::Zero(shape.finite.size());
    p.finite[i] = 1.0;
    for (const auto& g : shape.functions)
      p.functions.push_back(GridFunction::zero(g.dim(), g.half_width(), g.spacing()));
    dirs.push_back(p);
  }
  // function directions: band-limited bumps plus adversarial rough ones
  if (!shape.functions.empty()) {
    const auto& g0 = shape.functions[0];
    auto fam = probe_family(opts.seed, g0.dim(), g0.half_width(), g0.spacing(),
                            opts.smooth_probes, opts.rough_probes);
    for (auto& b : fam) {
      LevelPoint p;
      p.finite = Vector::Zero(shape.finite.size());
      for (size_t j = 0; j < shape.functions.size(); ++j) p.functions.push_back(b);
      dirs.push_back(p);
    }
  }
  return dirs;
}

}  // namespace

bool Sc1Report::all_pass() const {
  for (const auto& l : levels)
    if (!(l.c0 && l.residual && l.bounded && l.joint)) return false;
  return true;
}

Sc1Report sc1_verify(const LeveledMap& f, const LevelPoint& x, const Sc1Options& opts) {
  Sc1Report report;
  report.map = f.name;
  report.scale_shift = opts.scale_shift;

  for (int k = opts.min_level; k <= opts.max_level; ++k) {
    Sc1LevelReport lvl;
    lvl.level = k;
    auto dirs = probe_directions(f, x, opts);

    const LevelPoint fx = f.eval(k, x);
    const double f_scale = 1.0 + level_norm(fx, f.codomain_scale, k);

    // (i) continuity modulus at two displacement scales
    double coarse = 0.0, fine = 0.0;
    for (const auto& d : dirs) {
      const double nd = level_norm(d, f.domain_scale, k);
      if (nd == 0.0) continue;
      const LevelPoint unit = d * (1.0 / nd);
      coarse = std::max(coarse, level_norm(f.eval(k, x + unit * 1e-2) - fx, f.codomain_scale, k));
      fine = std::max(fine, level_norm(f.eval(k, x + unit * 1e-3) - fx, f.codomain_scale, k));
    }
    lvl.c0_modulus_coarse = coarse;
    lvl.c0_modulus_fine = fine;
    lvl.c0 = fine <= std::max(opts.continuity_threshold * f_scale, 0.5 * coarse);

    // (ii) linearization residual along shrinking steps; directions are
    // normalized at level k+1 (scale shift) or level k (classical probe)
    const int dir_level = opts.scale_shift ? k + 1 : k;
    lvl.residual_steps = {1e-1, 1e-2, 1e-3};
    lvl.residual_values.assign(lvl.residual_steps.size(), 0.0);
    for (const auto& d : dirs) {
      const double nd = level_norm(d, f.domain_scale, dir_level);
      if (nd == 0.0) continue;
      const LevelPoint unit = d * (1.0 / nd);
      TangentSample ts{x, unit, k};
      const auto dd = directional_derivative(f, ts);
      for (size_t si = 0; si < lvl.residual_steps.size(); ++si) {
        const double s = lvl.residual_steps[si];
        const LevelPoint lin = fx + dd.value * s;
        const double res = level_norm(f.eval(k, x + unit * s) - lin, f.codomain_scale, k) / s;
        lvl.residual_values[si] = std::max(lvl.residual_values[si], res);
      }
    }
    lvl.residual_rate = lvl.residual_values.back() / lvl.residual_steps.back();
    lvl.residual = lvl.residual_rate <= opts.residual_rate_bound * f_scale;

    // (iii) boundedness of the differential level k -> level k
    double ratio = 0.0;
    for (const auto& d : dirs) {
      const double nd = level_norm(d, f.domain_scale, k);
      if (nd == 0.0) continue;
      const LevelPoint unit = d * (1.0 / nd);
      const auto dd = directional_derivative(f, TangentSample{x, unit, k});
      ratio = std::max(ratio, level_norm(dd.value, f.codomain_scale, k));
    }
    lvl.bounded_ratio = ratio;
    lvl.bounded = ratio <= opts.bounded_ratio_bound * f_scale;

    // (iv) joint continuity of (x,h) -> DF_x(h) at two scales
    ProbeRng rng(opts.seed + 77);
    double joint_coarse = 0.0, joint_fine = 0.0;
    const int max_pairs = 6;
    for (int pair = 0; pair < max_pairs && pair < static_cast<int>(dirs.size()); ++pair) {
      const auto& h = dirs[pair];
      const double nh = level_norm(h, f.domain_scale, k);
      if (nh == 0.0) continue;
      const LevelPoint h_unit = h * (1.0 / nh);
      const auto base_dd = directional_derivative(f, TangentSample{x, h_unit, k});
      const auto& dx = dirs[rng.uniform_int(0, static_cast<int>(dirs.size()) - 1)];
      const double ndx = level_norm(dx, f.domain_scale, k + 1);
      if (ndx == 0.0) continue;
      const LevelPoint dx_unit = dx * (1.0 / ndx);
      for (double scale : {1e-2, 1e-3}) {
        const LevelPoint x2 = x + dx_unit * scale;
        const LevelPoint h2 = h_unit + dx_unit * scale;
        const auto dd2 = directional_derivative(f, TangentSample{x2, h2, k});
        const double delta = level_norm(dd2.value - base_dd.value, f.codomain_scale, k);
        (scale == 1e-2 ? joint_coarse : joint_fine) =
            std::max(scale == 1e-2 ? joint_coarse : joint_fine, delta);
      }
    }
    lvl.joint_modulus = joint_fine;
    lvl.joint = joint_fine <= std::max(opts.continuity_threshold * 10.0 * f_scale, 0.5 * joint_coarse);

    report.levels.push_back(lvl);
  }
  return report;
}

double chain_rule_check(const LeveledMap& f, const LeveledMap& g, const TangentSample& t) {
  // left side: tangent of the composition
  LeveledMap composed;
  composed.name = g.name + " o " + f.name;
  composed.finite_dims = f.finite_dims;
  composed.domain_scale = f.domain_scale;
  composed.codomain_scale = g.codomain_scale;
  auto feval = f.eval;
  auto geval = g.eval;
  composed.eval = [feval, geval](int k, const LevelPoint& p) { return geval(k, feval(k, p)); };
  const auto lhs = directional_derivative(composed, t);

  // right side: TG o TF
  const LevelPoint mid_base = f.eval(t.level + 1, t.base);
  const auto df = directional_derivative(f, t);
  const auto dg =
      directional_derivative(g, TangentSample{mid_base, df.value, t.level});
  return level_norm(lhs.value - dg.value, g.codomain_scale, t.level);
}

ClassicalFailureReport classical_failure_demo(const LeveledMap& f, const LevelPoint& x,
                                              const std::vector<int>& family, double step,
                                              int level) {
  ClassicalFailureReport rep;
  rep.step = step;
  if (x.functions.empty()) throw std::invalid_argument("classical_failure_demo: needs a function slot");
  const auto& g0 = x.functions[0];

  double max_residual = 0.0, min_tail_residual = std::numeric_limits<double>::infinity();
  for (int n : family) {
    GridFunction gamma_n = rough_direction(n, g0.dim(), g0.half_width(), g0.spacing());
    // normalize to C^1 size 1: sup|G| + sup|G'|
    const double c1 = gamma_n.values().cwiseAbs().maxCoeff() +
                      derivative(gamma_n).values().cwiseAbs().maxCoeff();
    gamma_n = gamma_n * (1.0 / c1);
    const double c2 = derivative(derivative(gamma_n)).values().cwiseAbs().maxCoeff() +
                      derivative(gamma_n).values().cwiseAbs().maxCoeff() +
                      gamma_n.values().cwiseAbs().maxCoeff();

    LevelPoint dir;
    dir.finite = Vector::Zero(x.finite.size());
    if (x.finite.size() > 0) dir.finite[0] = 1.0;
    for (size_t j = 0; j < x.functions.size(); ++j) dir.functions.push_back(gamma_n);

    const auto dd = directional_derivative(f, TangentSample{x, dir, level});
    const LevelPoint lin = f.eval(level, x) + dd.value * step;
    const double res = level_norm(f.eval(level, x + dir * step) - lin, f.codomain_scale, level);

    ClassicalFailureRow row;
    row.n = n;
    row.c1_size = 1.0;
    row.c2_size = c2;
    row.residual = res;
    rep.rows.push_back(row);
    max_residual = std::max(max_residual, res);
    if (n >= family.back() / 2) min_tail_residual = std::min(min_tail_residual, res);
  }
  rep.non_decaying = !rep.rows.empty() && min_tail_residual >= 0.2 * max_residual;

  // quadratic-in-step behavior of the smoothest member
  if (!family.empty()) {
    int n = family.front();
    GridFunction gamma_n = rough_direction(n, g0.dim(), g0.half_width(), g0.spacing());
    const double c1 = gamma_n.values().cwiseAbs().maxCoeff() +
                      derivative(gamma_n).values().cwiseAbs().maxCoeff();
    gamma_n = gamma_n * (1.0 / c1);
    LevelPoint dir;
    dir.finite = Vector::Zero(x.finite.size());
    if (x.finite.size() > 0) dir.finite[0] = 1.0;
    for (size_t j = 0; j < x.functions.size(); ++j) dir.functions.push_back(gamma_n);
    const auto dd = directional_derivative(f, TangentSample{x, dir, level});
    auto taylor_res = [&](double s) {
      const LevelPoint lin = f.eval(level, x) + dd.value * s;
      return level_norm(f.eval(level, x + dir * s) - lin, f.codomain_scale, level);
    };
    const double r1 = taylor_res(step);
    const double r2 = taylor_res(step / 2.0);
    rep.quadratic_ratio = r2 > 0.0 ? r1 / r2 : 0.0;  // ~4 for a quadratic residual
  }
  return rep;
}

LeveledMap translation_action(const ScaleStructure& scale) {
  LeveledMap m;
  m.name = "translation";
  m.finite_dims = 1;
  m.domain_scale = scale;
  m.codomain_scale = scale;
  m.eval = [](int, const LevelPoint& p) {
    LevelPoint out;
    out.finite = Vector(0);
    out.functions.push_back(shift(p.finite[0], p.functions[0]));
    return out;
  };
  m.analytic_tangent = [](int, const LevelPoint& base, const LevelPoint& dir) {
    const double s0 = base.finite[0];
    const double S = dir.finite[0];
    LevelPoint out;
    out.finite = Vector(0);
    const GridFunction dgamma = spectral_derivative(base.functions[0]);
    out.functions.push_back(shift(s0, dgamma) * S + shift(s0, dir.functions[0]));
    return out;
  };
  return m;
}

LeveledMap pointwise_square(const ScaleStructure& scale) {
  LeveledMap m;
  m.name = "pointwise square";
  m.finite_dims = 0;
  m.domain_scale = scale;
  m.codomain_scale = scale;
  m.eval = [](int, const LevelPoint& p) {
    const auto& u = p.functions[0];
    LevelPoint out;
    out.finite = Vector(0);
    out.functions.push_back(
        GridFunction(u.half_width(), u.spacing(), u.values().array().square().matrix(),
                     u.left_limit().array().square().matrix(),
                     u.right_limit().array().square().matrix()));
    return out;
  };
  return m;
}

}  // namespace sc

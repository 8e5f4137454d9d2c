#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scpoly/morse.hpp"
#include "scpoly/sc_calculus.hpp"

using namespace sc;

namespace {

constexpr double kT = 20.0;
constexpr double kH = 0.05;

ScaleStructure ladder() { return ScaleStructure::default_ladder(); }

GridFunction logistic_path() {
  return GridFunction::sample_scalar(kT, kH, [](double t) { return logistic_orbit(t); }, 0.0,
                                     1.0);
}

LevelPoint tau_point(double s0) {
  LevelPoint p;
  p.finite = Vector::Constant(1, s0);
  p.functions = {logistic_path()};
  return p;
}

LeveledMap linear_map(const ScaleStructure& s) {
  LeveledMap m;
  m.name = "axpy";
  m.finite_dims = 0;
  m.domain_scale = s;
  m.codomain_scale = s;
  m.eval = [](int, const LevelPoint& p) {
    LevelPoint out;
    out.finite = Vector(0);
    out.functions.push_back(p.functions[0] * 2.0 + derivative(p.functions[0]) * 0.0);
    return out;
  };
  return m;
}

LeveledMap identity_map(const ScaleStructure& s) {
  LeveledMap m;
  m.name = "identity";
  m.finite_dims = 1;
  m.domain_scale = s;
  m.codomain_scale = s;
  m.eval = [](int, const LevelPoint& p) { return p; };
  return m;
}

}  // namespace

TEST_CASE("directional derivative: linear maps are their own differential") {
  auto s = ladder();
  auto f = linear_map(s);
  ProbeRng rng(8);
  LevelPoint x;
  x.finite = Vector(0);
  x.functions = {band_limited_bump(rng, 1, kT, kH)};
  LevelPoint h;
  h.finite = Vector(0);
  h.functions = {band_limited_bump(rng, 1, kT, kH)};
  auto dd = directional_derivative(f, TangentSample{x, h, 0});
  CHECK(dd.converged);
  CHECK(level_norm(dd.value - f.eval(0, h), s, 0) < 1e-10);
}

TEST_CASE("directional derivative of the shift matches the analytic formula") {
  auto s = ladder();
  auto tau = translation_action(s);
  LevelPoint base = tau_point(0.35);
  ProbeRng rng(5);
  LevelPoint dir;
  dir.finite = Vector::Constant(1, 0.8);
  dir.functions = {band_limited_bump(rng, 1, kT, kH)};
  for (int level = 0; level <= 1; ++level) {
    auto dd = directional_derivative(tau, TangentSample{base, dir, level});
    CHECK(dd.converged);
    auto analytic = tau.analytic_tangent(level, base, dir);
    CHECK(level_norm(dd.value - analytic, s, level) < 1e-6);
  }
}

TEST_CASE("directional derivative is linear in the direction") {
  auto s = ladder();
  auto tau = translation_action(s);
  LevelPoint base = tau_point(-0.2);
  ProbeRng rng(11);
  for (int i = 0; i < 5; ++i) {
    LevelPoint h1, h2;
    h1.finite = Vector::Constant(1, rng.uniform(-1, 1));
    h1.functions = {band_limited_bump(rng, 1, kT, kH)};
    h2.finite = Vector::Constant(1, rng.uniform(-1, 1));
    h2.functions = {band_limited_bump(rng, 1, kT, kH)};
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    auto dsum = directional_derivative(tau, TangentSample{base, h1 * a + h2 * b, 0});
    auto d1 = directional_derivative(tau, TangentSample{base, h1, 0});
    auto d2 = directional_derivative(tau, TangentSample{base, h2, 0});
    CHECK(level_norm(dsum.value - (d1.value * a + d2.value * b), s, 0) < 1e-8);
  }
}

TEST_CASE("pointwise square: differential is 2 u v") {
  auto s = ladder();
  auto sq = pointwise_square(s);
  ProbeRng rng(21);
  LevelPoint u;
  u.finite = Vector(0);
  u.functions = {band_limited_bump(rng, 1, kT, kH)};
  LevelPoint v;
  v.finite = Vector(0);
  v.functions = {band_limited_bump(rng, 1, kT, kH)};
  auto dd = directional_derivative(sq, TangentSample{u, v, 0});
  Matrix expected = 2.0 * u.functions[0].values().array().cwiseProduct(
                              v.functions[0].values().array());
  CHECK((dd.value.functions[0].values() - expected).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("sc1_verify: identity passes everywhere") {
  auto s = ladder();
  auto idm = identity_map(s);
  auto rep = sc1_verify(idm, tau_point(0.0));
  CHECK(rep.all_pass());
}

TEST_CASE("sc1_verify: shift action passes with the scale shift, fails without") {
  auto s = ladder();
  auto tau = translation_action(s);
  LevelPoint base = tau_point(0.1);

  Sc1Options opts;
  auto rep = sc1_verify(tau, base, opts);
  CHECK(rep.all_pass());

  // residual rate grows along the rough family when directions are measured
  // at the same level: the classical (ii) fails
  Sc1Options classical = opts;
  classical.scale_shift = false;
  auto rep2 = sc1_verify(tau, base, classical);
  bool residual_failed = false;
  for (const auto& lvl : rep2.levels) {
    if (!lvl.residual) residual_failed = true;
    // the rough-direction family stalls: residual rate much larger than the
    // scale-shifted rate at the same level
    CHECK(lvl.residual_rate >= rep.levels[lvl.level].residual_rate);
  }
  CHECK(residual_failed);
}

TEST_CASE("eval consistency across levels") {
  auto s = ladder();
  auto tau = translation_action(s);
  CHECK(leveled_consistency_check(tau, tau_point(0.27), 3) < 1e-12);
}

TEST_CASE("chain rule: linear pair, square after shift, shift after shift") {
  auto s = ladder();
  auto tau = translation_action(s);
  auto sq = pointwise_square(s);
  const double chain_tol = 1e-6;

  // linear o linear
  auto lin = linear_map(s);
  ProbeRng rng(31);
  LevelPoint x;
  x.finite = Vector(0);
  x.functions = {band_limited_bump(rng, 1, kT, kH)};
  LevelPoint h;
  h.finite = Vector(0);
  h.functions = {band_limited_bump(rng, 1, kT, kH)};
  CHECK(chain_rule_check(lin, lin, TangentSample{x, h, 0}) < 1e-10);

  // square o shift on random samples
  for (int i = 0; i < 8; ++i) {
    LevelPoint base = tau_point(rng.uniform(-0.5, 0.5));
    base.functions[0] = base.functions[0] + band_limited_bump(rng, 1, kT, kH) * 0.2;
    LevelPoint dir;
    dir.finite = Vector::Constant(1, rng.uniform(-1, 1));
    dir.functions = {band_limited_bump(rng, 1, kT, kH)};
    CHECK(chain_rule_check(tau, sq, TangentSample{base, dir, 0}) < chain_tol);
  }

  // shift o shift: the composition shifts by the sum
  LeveledMap pre;  // (s1, s2, gamma) -> (s2, tau(s1, gamma))
  pre.name = "shift, keeping the second parameter";
  pre.finite_dims = 2;
  pre.domain_scale = s;
  pre.codomain_scale = s;
  pre.eval = [](int, const LevelPoint& p) {
    LevelPoint out;
    out.finite = Vector::Constant(1, p.finite[1]);
    out.functions.push_back(shift(p.finite[0], p.functions[0]));
    return out;
  };
  for (int i = 0; i < 4; ++i) {
    LevelPoint base;
    base.finite = Vector(2);
    base.finite << rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4);
    base.functions = {logistic_path()};
    LevelPoint dir;
    dir.finite = Vector(2);
    dir.finite << rng.uniform(-1, 1), rng.uniform(-1, 1);
    dir.functions = {band_limited_bump(rng, 1, kT, kH)};
    CHECK(chain_rule_check(pre, tau, TangentSample{base, dir, 0}) < chain_tol);

    // and T(tau o pre) matches the analytic tangent of the sum shift
    LeveledMap composed;
    composed.finite_dims = 2;
    composed.domain_scale = s;
    composed.codomain_scale = s;
    auto pre_eval = pre.eval;
    auto tau_eval = tau.eval;
    composed.eval = [pre_eval, tau_eval](int k, const LevelPoint& p) {
      return tau_eval(k, pre_eval(k, p));
    };
    auto dd = directional_derivative(composed, TangentSample{base, dir, 0});
    const double s_total = base.finite[0] + base.finite[1];
    const double S_total = dir.finite[0] + dir.finite[1];
    auto dgamma = spectral_derivative(base.functions[0]);
    auto expected = shift(s_total, dgamma) * S_total + shift(s_total, dir.functions[0]);
    CHECK(level_norm(dd.value, s, 0) > 0.0);
    CHECK(weighted_norm(dd.value.functions[0] - expected, s.level(0)) < chain_tol);
  }

  // chain rule against the identity is numerically exact
  LevelPoint base = tau_point(0.2);
  LevelPoint dir;
  dir.finite = Vector::Constant(1, 0.5);
  ProbeRng rng2(7);
  dir.functions = {band_limited_bump(rng2, 1, kT, kH)};
  CHECK(chain_rule_check(identity_map(s), tau, TangentSample{base, dir, 0}) < 1e-10);
}

TEST_CASE("classical failure: residual does not decay along the rough family") {
  auto s = ladder();
  auto tau = translation_action(s);
  LevelPoint base = tau_point(0.0);
  auto rep = classical_failure_demo(tau, base, {1, 2, 4, 8, 12, 16, 20}, 0.1, 1);
  CHECK(rep.non_decaying);
  // smooth member: residual is quadratic in the step (halving the step
  // quarters the residual)
  CHECK(rep.quadratic_ratio == doctest::Approx(4.0).epsilon(0.2));
  // the same family, fed through the scale-shifted harness, passes
  auto rep_sc = sc1_verify(tau, base);
  CHECK(rep_sc.all_pass());
}

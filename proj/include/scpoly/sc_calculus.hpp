#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scpoly/probes.hpp"
#include "scpoly/scale_space.hpp"

// Numerical sc^0/sc^1 verification harness.  Maps are black boxes evaluated
// per level; differentials are central differences with Richardson
// extrapolation.  Failures are data: the reports carry the tables, and the
// same machinery that certifies the shift action as sc^1 exhibits its
// classical-differentiability failure when the scale shift is turned off.

namespace sc {

// A point of R^d x E: finite coordinates plus function coordinates.
struct LevelPoint {
  Vector finite;
  std::vector<GridFunction> functions;

  static LevelPoint make(Vector finite, std::vector<GridFunction> functions);
  LevelPoint& operator+=(const LevelPoint& other);
  LevelPoint operator+(const LevelPoint& other) const;
  LevelPoint operator-(const LevelPoint& other) const;
  LevelPoint operator*(double c) const;
};

// |finite| + sum of weighted norms of the function parts at level k.
double level_norm(const LevelPoint& p, const ScaleStructure& s, int k);

struct LeveledMap {
  std::string name;
  int finite_dims = 0;
  ScaleStructure domain_scale;
  ScaleStructure codomain_scale;
  // eval(k, x): evaluate on level k.  Must agree across levels on common
  // points; that consistency is checked by leveled_consistency_check.
  std::function<LevelPoint(int, const LevelPoint&)> eval;
  // Optional analytic tangent (base, direction) -> derivative, used to
  // cross-check the finite-difference differential.
  std::function<LevelPoint(int, const LevelPoint&, const LevelPoint&)> analytic_tangent;
};

struct TangentSample {
  LevelPoint base;       // point at level k+1
  LevelPoint direction;  // point at level k
  int level = 0;
};

// max over levels of ||eval(k, x) - eval(k-1, x)|| at level k-1.
double leveled_consistency_check(const LeveledMap& f, const LevelPoint& x, int max_level);

struct DirectionalDerivative {
  LevelPoint value;
  double extrapolation_gap = 0.0;  // distance between the two estimates
  bool converged = false;
};

inline constexpr double kDerivativeTol = 1e-5;

// Central differences at eps = 1e-3 and 1e-4 with Richardson extrapolation,
// measured in the codomain level-k norm.
DirectionalDerivative directional_derivative(const LeveledMap& f, const TangentSample& t);

struct Sc1LevelReport {
  int level = 0;
  bool c0 = false;        // (i) continuity at level k
  bool residual = false;  // (ii) linearization residual with scale shift
  bool bounded = false;   // (iii) differential bounded level k -> level k
  bool joint = false;     // (iv) joint continuity of (x,h) -> DF_x(h)
  double c0_modulus_coarse = 0.0;
  double c0_modulus_fine = 0.0;
  double residual_rate = 0.0;     // sup_h residual/step with h unit at level k+1
  double bounded_ratio = 0.0;     // sup_h ||DF(h)||_k / ||h||_k
  double joint_modulus = 0.0;
  std::vector<double> residual_steps;
  std::vector<double> residual_values;
};

struct Sc1Report {
  std::string map;
  bool scale_shift = true;  // directions normalized at level k+1 (sc) or k (classical)
  std::vector<Sc1LevelReport> levels;
  bool all_pass() const;
};

struct Sc1Options {
  int min_level = 0;
  int max_level = 2;
  bool scale_shift = true;   // false: measure residual against level-k direction size
  double residual_rate_bound = 100.0;
  double continuity_threshold = 1e-3;
  double bounded_ratio_bound = 1e4;
  std::uint64_t seed = 2024;
  int smooth_probes = 32;
  int rough_probes = 8;
};

Sc1Report sc1_verify(const LeveledMap& f, const LevelPoint& x, const Sc1Options& opts = {});

// || T(G o F)(t) - TG(TF(t)) || at level t.level.
double chain_rule_check(const LeveledMap& f, const LeveledMap& g, const TangentSample& t);

struct ClassicalFailureRow {
  int n = 0;
  double c1_size = 0.0;
  double c2_size = 0.0;
  double residual = 0.0;  // first-order Taylor residual at the fixed step
};

struct ClassicalFailureReport {
  double step = 0.0;
  std::vector<ClassicalFailureRow> rows;
  // Residual stays bounded below along the family: no uniform operator-norm
  // differentiability.
  bool non_decaying = false;
  // For the smoothest member the residual is quadratic in the step.
  double quadratic_ratio = 0.0;
};

// Taylor residual of the map at fixed step over the rough family
// Gamma_n = n^{-1} sin(nt) windowed, measured level k -> level k.
ClassicalFailureReport classical_failure_demo(const LeveledMap& f, const LevelPoint& x,
                                              const std::vector<int>& family, double step,
                                              int level = 1);

// The translation action as a LeveledMap over a given scale; the analytic
// tangent is S tau(s, dgamma/dt) + tau(s, Gamma).
LeveledMap translation_action(const ScaleStructure& scale);

// Pointwise square u -> u^2 on scalar grid functions (limits squared).
LeveledMap pointwise_square(const ScaleStructure& scale);

}  // namespace sc

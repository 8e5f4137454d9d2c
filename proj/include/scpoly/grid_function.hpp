#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <string>

#include "scpoly/fourier.hpp"

// GridFunction: a map R -> R^n discretized on the uniform grid
// t_i = -T + i*h, i = 0..N (N = 2T/h even), together with asymptotic limit
// values at -inf / +inf.  Off the grid a function is understood as
//   gamma(t) = profile(t) + periodic perturbation,
// where profile(t) = left + (1 - beta(t)) (right - left) is the smooth step
// between the limits; the perturbation decays at both ends and is treated as
// periodic with period 2T by every trigonometric operation.

namespace sc {

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(double half_width, double spacing, Matrix values, Vector left_limit,
               Vector right_limit);

  static GridFunction zero(int dim, double half_width, double spacing);
  static GridFunction constant(const Vector& value, double half_width, double spacing);
  // Sample a callable t -> R^n; limits given explicitly.
  static GridFunction sample(double half_width, double spacing,
                             const std::function<Vector(double)>& f, Vector left_limit,
                             Vector right_limit);
  // Scalar convenience.
  static GridFunction sample_scalar(double half_width, double spacing,
                                    const std::function<double(double)>& f, double left_limit,
                                    double right_limit);

  int dim() const { return static_cast<int>(values_.cols()); }
  int size() const { return static_cast<int>(values_.rows()); }  // N+1 points
  int num_intervals() const { return size() - 1; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  double period() const { return 2.0 * half_width_; }
  double t(int i) const { return -half_width_ + spacing_ * i; }
  int node_of(double t_value) const;  // nearest grid index

  const Matrix& values() const { return values_; }
  Matrix& values() { return values_; }
  const Vector& left_limit() const { return left_limit_; }
  const Vector& right_limit() const { return right_limit_; }

  Vector value_at(int i) const { return values_.row(i).transpose(); }

  // Same grid and limits, new values.
  GridFunction with_values(Matrix values) const;
  GridFunction with_limits(Vector left, Vector right) const;

  // Smooth step profile between the limits, sampled on the grid / evaluated
  // anywhere; profile_derivative is its exact t-derivative.
  Matrix profile_samples() const;
  Vector profile(double t) const;
  Vector profile_derivative(double t) const;
  // values - profile on the first N (periodic) nodes, one column per dim.
  Matrix periodic_part() const;

  // Largest deviation of the end values from the limits.
  double tail_deviation() const;

  // Radius of the region actually carrying the perturbation: smallest r such
  // that |values - profile| <= floor_rel * max beyond |t| = r.
  double content_radius(double floor_rel = 1e-15) const;

  // Multiplies the perturbation part by a smooth window equal to 1 on
  // |t| <= radius and 0 on |t| >= radius + 2.  Used by the spectral
  // operations to pin the far field to exact zeros, where the exponential
  // weights would otherwise amplify roundoff.
  GridFunction mask_beyond(double radius) const;

  bool same_grid(const GridFunction& other) const;

  // Linear arithmetic; limits combine linearly.
  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator-(const GridFunction& other) const;
  GridFunction operator*(double scalar) const;

  bool all_finite() const;

  // Sup over grid nodes of the euclidean norm of the difference.
  double sup_distance(const GridFunction& other) const;

  // CSV round trip: header "t,x1..xn", one row per node with 17 significant
  // digits, trailing "#left_limit=..." and "#right_limit=..." lines.
  void write_csv(std::ostream& os) const;
  static GridFunction read_csv(std::istream& is);
  void save_csv(const std::string& path) const;
  static GridFunction load_csv(const std::string& path);

 private:
  double half_width_ = 0.0;
  double spacing_ = 1.0;
  Matrix values_;
  Vector left_limit_;
  Vector right_limit_;
};

// Point evaluation of a GridFunction anywhere on R: trigonometric
// interpolant of the periodic part plus the analytic profile.  Consistent
// with the spectral shift: evaluating a shifted function at t equals
// evaluating the original at t+s up to roundoff.
class PathEvaluator {
 public:
  explicit PathEvaluator(const GridFunction& g);

  Vector value(double t) const;
  Vector derivative(double t) const;

 private:
  const GridFunction* g_;
  std::vector<TrigInterpolant> interp_;
};

}  // namespace sc

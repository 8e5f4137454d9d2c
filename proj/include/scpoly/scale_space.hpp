#pragma once

#include <stdexcept>
#include <vector>

#include "scpoly/grid_function.hpp"

// Discretized weighted Sobolev scale: levels E_k are W^{m_k,2} spaces with
// exponential weight e^{delta_k * t * beta_w(t)}.  The weight sequence must
// stay below the smallest absolute Hessian eigenvalue of the Morse system in
// play, otherwise the trajectory perturbations fall out of every level.

namespace sc {

struct ScaleLevel {
  int order = 2;        // Sobolev regularity m_k
  double weight = 0.0;  // exponential weight delta_k
};

struct ScaleStructure {
  std::vector<ScaleLevel> levels;

  int num_levels() const { return static_cast<int>(levels.size()); }
  const ScaleLevel& level(int k) const { return levels.at(k); }

  // delta_0 = 0, delta strictly increasing, m strictly increasing,
  // sup delta_k < lambda_min.
  void validate(double lambda_min) const;

  // (m_k, delta_k) = (2+k, k) for k = 0..3.
  static ScaleStructure default_ladder();
};

struct NormOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Norm guard: a weighted norm larger than this reports overflow, which is
// the discrete stand-in for "u is not in the level" (weight beats decay).
inline constexpr double kNormOverflowGuard = 1e12;

// Fourth order finite differences, one-sided at the ends; derivative limits
// are 0.  This is the workhorse derivative for norms; the solvers use the
// spectral derivative below.
GridFunction derivative(const GridFunction& u);

// Spectral derivative: exact on the trigonometric interpolant of the
// periodic part, profile differentiated analytically.
GridFunction spectral_derivative(const GridFunction& u);

// ( sum_{j<=m} integral |e^{delta t beta_w} D^j u|^2 )^{1/2} by trapezoid
// quadrature; throws NormOverflow when the guard trips and domain_error on
// non-finite input or stencil overflow.
double weighted_norm(const GridFunction& u, int order, double weight);

inline double weighted_norm(const GridFunction& u, const ScaleLevel& lvl) {
  return weighted_norm(u, lvl.order, lvl.weight);
}

// Plain L^2 norm (order 0, weight 0).
double l2_norm(const GridFunction& u);

// L^2 inner product.
double l2_inner(const GridFunction& u, const GridFunction& v);

// tau(s, u) = u(s + .): spectral shift of the periodic part plus the
// analytically translated profile.  Requires |s| < T.
GridFunction shift(double s, const GridFunction& u);

struct EmbeddingReport {
  int low_level = 0;
  int high_level = 0;
  double low_norm = 0.0;
  double high_norm = 0.0;
  double constant = 0.0;  // empirical ||u||_j / ||u||_k
  bool passes = false;    // ||u||_j <= C_max ||u||_k with C_max = 1 + 1e-12
};

// Checks ||u||_j <= C ||u||_k for j < k; with this ladder the inclusion
// constant is 1 (levels only add terms and grow the weight).
EmbeddingReport level_embedding_check(const GridFunction& u, const ScaleStructure& s, int k,
                                      int j);

}  // namespace sc

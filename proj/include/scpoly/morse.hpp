#pragma once

#include <functional>
#include <string>
#include <vector>

#include "scpoly/scale_space.hpp"

// Explicit Morse systems on R^n with the ascending gradient flow convention:
// trajectories solve dgamma/dt = grad f(gamma) and run from lower to higher
// critical values.  The section sigma(gamma) = dgamma/dt - grad f(gamma) is
// the object all Fredholm and moduli work linearizes.

namespace sc {

struct CriticalPoint {
  Vector location;
  int morse_index = 0;  // number of negative Hessian eigenvalues
  Vector hessian_spectrum;
  std::string name;
};

struct MorseSystem {
  int dim = 0;
  std::function<double(const Vector&)> f;
  std::function<Vector(const Vector&)> grad;
  std::function<Matrix(const Vector&)> hess;
  std::vector<CriticalPoint> critical_points;
  double lambda_min = 0.0;  // smallest |Hessian eigenvalue| over critical points

  const CriticalPoint& critical(const std::string& name) const;
  // Index into critical_points of the nearest critical point.
  int nearest_critical(const Vector& x) const;

  // Checks: gradient vanishes at the listed points, Hessians nonsingular,
  // listed Morse index matches the spectrum.
  void validate() const;
};

// f(x,y) = g(x) + g(y) with g(t) = 3t^2 - 2t^3.  Critical points
// a=(0,0), b1=(1,0), b2=(0,1), c=(1,1) with indices 0,1,1,2; lambda_min = 6.
// The one-dimensional ascending flow dx/dt = 6x(1-x) has the exact
// heteroclinic x(t) = 1/(1+e^{-6t}).
MorseSystem separable_model();

// A MorseSystem from a closed-form f with gradient and Hessian by fourth
// order nested finite differences, critical points found by Newton from a
// seed lattice.
MorseSystem numeric_system(int dim, std::function<double(const Vector&)> f,
                           const Vector& box_lo, const Vector& box_hi, int lattice_points = 7);

// Exact 1-d heteroclinic profile of the separable model.
double logistic_orbit(double t);

struct Trajectory {
  GridFunction path;  // limits equal to the endpoint locations
  int from = 0;       // indices into MorseSystem::critical_points
  int to = 0;
  double residual = 0.0;  // level-0 norm of the section at the path
};

// sigma(gamma) = dgamma/dt - grad f(gamma); spectral derivative.  Throws if
// the limits are not critical points of M (within tail tolerance).
GridFunction section(const GridFunction& gamma, const MorseSystem& M, double tail_tol = 1e-6);

// Time-dependent linearization d/dt - Hess f(gamma(t)) packaged for the
// operator assembly; carries the path and the system.
struct LinearStencil {
  GridFunction path;
  const MorseSystem* system = nullptr;

  Matrix coefficient(double t) const;          // Hess f(path(t))
  Matrix asymptotic_left() const;              // Hess f at the left limit
  Matrix asymptotic_right() const;             // Hess f at the right limit
};

LinearStencil linearize(const Trajectory& gamma, const MorseSystem& M);
LinearStencil linearize_path(const GridFunction& path, const MorseSystem& M);

// Smooth reference path from p to q, constant outside [-1,1], built from the
// exact-support cutoff so its derivative has compact support;
// psi'(0) = (q-p)/2.
GridFunction reference_path(const Vector& p, const Vector& q, double half_width, double spacing);

// Newton on grad f from a lattice of seeds; used to cross-check the critical
// point list of closed-form systems.
std::vector<Vector> find_critical_points(const MorseSystem& M, const Vector& box_lo,
                                         const Vector& box_hi, int lattice_points = 7,
                                         double tol = 1e-12);

}  // namespace sc

#include "scpoly/morse.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scpoly/cutoffs.hpp"

namespace sc {

namespace {

double cubic_g(double t) { return 3.0 * t * t - 2.0 * t * t * t; }
double cubic_g1(double t) { return 6.0 * t - 6.0 * t * t; }
double cubic_g2(double t) { return 6.0 - 12.0 * t; }

Vector eigenvalues_sym(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  return es.eigenvalues();
}

}  // namespace

const CriticalPoint& MorseSystem::critical(const std::string& name) const {
  for (const auto& c : critical_points)
    if (c.name == name) return c;
  throw std::invalid_argument("MorseSystem: unknown critical point " + name);
}

int MorseSystem::nearest_critical(const Vector& x) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < critical_points.size(); ++i) {
    const double d = (critical_points[i].location - x).norm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

void MorseSystem::validate() const {
  for (const auto& c : critical_points) {
    if (grad(c.location).norm() > 1e-10)
      throw std::invalid_argument("MorseSystem: gradient does not vanish at " + c.name);
    const Vector ev = eigenvalues_sym(hess(c.location));
    if (ev.cwiseAbs().minCoeff() < 1e-6)
      throw std::invalid_argument("MorseSystem: near-singular Hessian at " + c.name);
    int negatives = 0;
    for (int i = 0; i < ev.size(); ++i)
      if (ev[i] < 0.0) ++negatives;
    if (negatives != c.morse_index)
      throw std::invalid_argument("MorseSystem: listed Morse index wrong at " + c.name);
  }
}

MorseSystem separable_model() {
  MorseSystem m;
  m.dim = 2;
  m.f = [](const Vector& x) { return cubic_g(x[0]) + cubic_g(x[1]); };
  m.grad = [](const Vector& x) {
    Vector g(2);
    g << cubic_g1(x[0]), cubic_g1(x[1]);
    return g;
  };
  m.hess = [](const Vector& x) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = cubic_g2(x[0]);
    h(1, 1) = cubic_g2(x[1]);
    return h;
  };
  auto add = [&m](double x, double y, int index, const std::string& name) {
    CriticalPoint c;
    c.location = Vector(2);
    c.location << x, y;
    c.morse_index = index;
    c.hessian_spectrum = eigenvalues_sym(m.hess(c.location));
    c.name = name;
    m.critical_points.push_back(c);
  };
  add(0.0, 0.0, 0, "a");
  add(1.0, 0.0, 1, "b1");
  add(0.0, 1.0, 1, "b2");
  add(1.0, 1.0, 2, "c");
  m.lambda_min = 6.0;
  m.validate();
  return m;
}

double logistic_orbit(double t) { return 1.0 / (1.0 + std::exp(-6.0 * t)); }

MorseSystem numeric_system(int dim, std::function<double(const Vector&)> f, const Vector& box_lo,
                           const Vector& box_hi, int lattice_points) {
  MorseSystem m;
  m.dim = dim;
  m.f = f;
  const double step = 1e-4;
  m.grad = [f, dim, step](const Vector& x) {
    Vector g(dim);
    for (int i = 0; i < dim; ++i) {
      Vector e = Vector::Zero(dim);
      e[i] = step;
      g[i] = (-f(x + 2 * e) + 8 * f(x + e) - 8 * f(x - e) + f(x - 2 * e)) / (12 * step);
    }
    return g;
  };
  auto grad = m.grad;
  m.hess = [grad, dim, step](const Vector& x) {
    Matrix h(dim, dim);
    for (int i = 0; i < dim; ++i) {
      Vector e = Vector::Zero(dim);
      e[i] = step;
      h.col(i) =
          (-grad(x + 2 * e) + 8 * grad(x + e) - 8 * grad(x - e) + grad(x - 2 * e)) / (12 * step);
    }
    return ((h + h.transpose()) / 2.0).eval();
  };
  auto roots = find_critical_points(m, box_lo, box_hi, lattice_points, 1e-11);
  double lmin = std::numeric_limits<double>::infinity();
  int counter = 0;
  for (const auto& r : roots) {
    CriticalPoint c;
    c.location = r;
    c.hessian_spectrum = eigenvalues_sym(m.hess(r));
    c.morse_index = 0;
    for (int i = 0; i < dim; ++i)
      if (c.hessian_spectrum[i] < 0.0) ++c.morse_index;
    c.name = "p" + std::to_string(counter++);
    lmin = std::min(lmin, c.hessian_spectrum.cwiseAbs().minCoeff());
    m.critical_points.push_back(c);
  }
  m.lambda_min = lmin;
  return m;
}

GridFunction section(const GridFunction& gamma, const MorseSystem& M, double tail_tol) {
  bool left_ok = false, right_ok = false;
  for (const auto& c : M.critical_points) {
    if ((gamma.left_limit() - c.location).norm() < tail_tol) left_ok = true;
    if ((gamma.right_limit() - c.location).norm() < tail_tol) right_ok = true;
  }
  if (!left_ok || !right_ok)
    throw std::invalid_argument("section: path limits are not critical points");

  GridFunction d = spectral_derivative(gamma);
  Matrix vals = d.values();
  for (int i = 0; i < gamma.size(); ++i)
    vals.row(i) -= M.grad(gamma.value_at(i)).transpose();
  return GridFunction(gamma.half_width(), gamma.spacing(), std::move(vals),
                      Vector::Zero(gamma.dim()), Vector::Zero(gamma.dim()));
}

Matrix LinearStencil::coefficient(double t) const {
  PathEvaluator ev(path);
  return system->hess(ev.value(t));
}

Matrix LinearStencil::asymptotic_left() const { return system->hess(path.left_limit()); }

Matrix LinearStencil::asymptotic_right() const { return system->hess(path.right_limit()); }

LinearStencil linearize(const Trajectory& gamma, const MorseSystem& M) {
  return LinearStencil{gamma.path, &M};
}

LinearStencil linearize_path(const GridFunction& path, const MorseSystem& M) {
  return LinearStencil{path, &M};
}

GridFunction reference_path(const Vector& p, const Vector& q, double half_width, double spacing) {
  auto f = [&](double t) { return (p + (1.0 - cutoff_beta(t)) * (q - p)).eval(); };
  return GridFunction::sample(half_width, spacing, f, p, q);
}

std::vector<Vector> find_critical_points(const MorseSystem& M, const Vector& box_lo,
                                         const Vector& box_hi, int lattice_points, double tol) {
  std::vector<Vector> roots;
  const int dim = M.dim;
  std::vector<int> idx(dim, 0);
  const long total = static_cast<long>(std::pow(lattice_points, dim));
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    Vector x(dim);
    for (int i = 0; i < dim; ++i) {
      const int k = rem % lattice_points;
      rem /= lattice_points;
      x[i] = box_lo[i] + (box_hi[i] - box_lo[i]) * k / (lattice_points - 1.0);
    }
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const Vector g = M.grad(x);
      if (g.norm() < tol) {
        converged = true;
        break;
      }
      const Matrix h = M.hess(x);
      Vector step = h.fullPivLu().solve(g);
      if (!step.allFinite()) break;
      if (step.norm() > 1.0) step *= 1.0 / step.norm();
      x -= step;
      if ((x - box_lo).minCoeff() < -1.0 || (box_hi - x).minCoeff() < -1.0) break;
    }
    if (!converged) continue;
    bool dup = false;
    for (const auto& r : roots)
      if ((r - x).norm() < 1e-7) dup = true;
    if (!dup) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end(), [](const Vector& a, const Vector& b) {
    for (int i = 0; i < a.size(); ++i) {
      if (a[i] < b[i] - 1e-9) return true;
      if (a[i] > b[i] + 1e-9) return false;
    }
    return false;
  });
  return roots;
}

}  // namespace sc

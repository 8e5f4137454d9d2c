#include "scpoly/scale_space.hpp"

#include <cmath>

#include "scpoly/cutoffs.hpp"

namespace sc {

void ScaleStructure::validate(double lambda_min) const {
  if (levels.empty()) throw std::invalid_argument("ScaleStructure: no levels");
  if (levels[0].weight != 0.0) throw std::invalid_argument("ScaleStructure: delta_0 must be 0");
  for (size_t k = 1; k < levels.size(); ++k) {
    if (levels[k].weight <= levels[k - 1].weight)
      throw std::invalid_argument("ScaleStructure: weights must be strictly increasing");
    if (levels[k].order <= levels[k - 1].order)
      throw std::invalid_argument("ScaleStructure: orders must be strictly increasing");
  }
  if (levels.back().weight >= lambda_min)
    throw std::invalid_argument("ScaleStructure: sup delta_k must stay below lambda_min");
}

ScaleStructure ScaleStructure::default_ladder() {
  // Weights grow gently: e^{delta T} multiplies any far-field roundoff left
  // by spectral operations, and delta = 1.2 at T = 20 keeps that factor
  // within double-precision headroom while staying well below lambda_min = 6.
  ScaleStructure s;
  for (int k = 0; k <= 3; ++k) s.levels.push_back({2 + k, 0.4 * k});
  return s;
}

GridFunction derivative(const GridFunction& u) {
  const int n = u.size();
  if (n < 5) throw std::domain_error("derivative: grid length must be at least 5");
  const double h = u.spacing();
  const Matrix& v = u.values();
  Matrix d(n, u.dim());
  for (int i = 2; i < n - 2; ++i)
    d.row(i) = (-v.row(i + 2) + 8.0 * v.row(i + 1) - 8.0 * v.row(i - 1) + v.row(i - 2)) / (12.0 * h);
  d.row(0) =
      (-25.0 * v.row(0) + 48.0 * v.row(1) - 36.0 * v.row(2) + 16.0 * v.row(3) - 3.0 * v.row(4)) /
      (12.0 * h);
  d.row(1) =
      (-3.0 * v.row(0) - 10.0 * v.row(1) + 18.0 * v.row(2) - 6.0 * v.row(3) + v.row(4)) /
      (12.0 * h);
  d.row(n - 1) = (25.0 * v.row(n - 1) - 48.0 * v.row(n - 2) + 36.0 * v.row(n - 3) -
                  16.0 * v.row(n - 4) + 3.0 * v.row(n - 5)) /
                 (12.0 * h);
  d.row(n - 2) = (3.0 * v.row(n - 1) + 10.0 * v.row(n - 2) - 18.0 * v.row(n - 3) +
                  6.0 * v.row(n - 4) - v.row(n - 5)) /
                 (12.0 * h);
  return GridFunction(u.half_width(), u.spacing(), std::move(d), Vector::Zero(u.dim()),
                      Vector::Zero(u.dim()));
}

GridFunction spectral_derivative(const GridFunction& u) {
  const int n = u.num_intervals();
  const Matrix part = u.periodic_part();
  const Matrix d = spectral_derivative_matrix(n, u.period());
  Matrix out(n + 1, u.dim());
  out.topRows(n) = d * part;
  for (int i = 0; i < n; ++i)
    out.row(i) += u.profile_derivative(u.t(i)).transpose();
  // The redundant endpoint is the same periodic node as the first one.
  out.row(n) = (out.row(0) - u.profile_derivative(u.t(0)).transpose()) +
               u.profile_derivative(u.t(n)).transpose();
  GridFunction g(u.half_width(), u.spacing(), std::move(out), Vector::Zero(u.dim()),
                 Vector::Zero(u.dim()));
  const double radius =
      std::max(u.content_radius() + 1.0, (u.left_limit() - u.right_limit()).norm() > 0.0 ? 7.0 : 0.0);
  if (radius + 2.0 < u.half_width()) g = g.mask_beyond(radius);
  return g;
}

double weighted_norm(const GridFunction& u, int order, double weight) {
  if (order < 0 || weight < 0.0)
    throw std::domain_error("weighted_norm: order and weight must be nonnegative");
  if (u.size() < 5 * (order > 0 ? 1 : 0) + 3)
    throw std::domain_error("weighted_norm: grid too coarse for requested order");
  if (!u.all_finite()) throw std::domain_error("weighted_norm: non-finite input");

  const int n = u.size();
  Vector w2(n);
  for (int i = 0; i < n; ++i) {
    const double e = weight * weight_exponent(u.t(i));
    if (e > 600.0) throw NormOverflow("weighted_norm: weight overpowers decay");
    const double w = std::exp(e);
    w2[i] = w * w;
  }

  double total = 0.0;
  GridFunction der = u;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) der = derivative(der);
    Vector integrand = der.values().rowwise().squaredNorm().cwiseProduct(w2);
    // trapezoid rule
    double part = 0.5 * (integrand[0] + integrand[n - 1]);
    for (int i = 1; i < n - 1; ++i) part += integrand[i];
    total += part * u.spacing();
    if (!std::isfinite(total) || total > kNormOverflowGuard * kNormOverflowGuard)
      throw NormOverflow("weighted_norm: weight overpowers decay");
  }
  return std::sqrt(total);
}

double l2_norm(const GridFunction& u) { return weighted_norm(u, 0, 0.0); }

double l2_inner(const GridFunction& u, const GridFunction& v) {
  if (!u.same_grid(v)) throw std::invalid_argument("l2_inner: grid mismatch");
  const int n = u.size();
  Vector integrand = (u.values().array() * v.values().array()).rowwise().sum();
  double part = 0.5 * (integrand[0] + integrand[n - 1]);
  for (int i = 1; i < n - 1; ++i) part += integrand[i];
  return part * u.spacing();
}

GridFunction shift(double s, const GridFunction& u) {
  if (std::abs(s) >= u.half_width())
    throw std::domain_error("shift: |s| must be smaller than the grid half-width");
  const int n = u.num_intervals();
  const Matrix part = u.periodic_part();
  Matrix out(n + 1, u.dim());
  for (int j = 0; j < u.dim(); ++j) {
    Vector col = periodic_shift(part.col(j), s, u.period());
    out.col(j).head(n) = col;
    out(n, j) = col[0];
  }
  for (int i = 0; i <= n; ++i) out.row(i) += u.profile(u.t(i) + s).transpose();
  GridFunction g(u.half_width(), u.spacing(), std::move(out), u.left_limit(), u.right_limit());
  // Pin the far field, where the translate is zero below roundoff, to exact
  // zeros; otherwise the exponential weights amplify FFT noise.
  double radius = u.content_radius() + std::abs(s) + 1.0;
  if ((u.left_limit() - u.right_limit()).norm() > 0.0)
    radius = std::max(radius, 7.0 + std::abs(s));
  if (radius + 2.0 < u.half_width()) g = g.mask_beyond(radius);
  return g;
}

EmbeddingReport level_embedding_check(const GridFunction& u, const ScaleStructure& s, int k,
                                      int j) {
  if (k <= j || k >= s.num_levels() || j < 0)
    throw std::invalid_argument("level_embedding_check: need valid levels k > j");
  EmbeddingReport r;
  r.low_level = j;
  r.high_level = k;
  r.low_norm = weighted_norm(u, s.level(j));
  r.high_norm = weighted_norm(u, s.level(k));
  r.constant = r.high_norm > 0.0 ? r.low_norm / r.high_norm : 0.0;
  r.passes = r.low_norm <= (1.0 + 1e-12) * r.high_norm;
  return r;
}

}  // namespace sc

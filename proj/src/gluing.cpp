#include "scpoly/gluing.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "scpoly/cutoffs.hpp"
#include "scpoly/probes.hpp"

namespace sc {

double GluingProfile::neck(double v) const {
  if (v < 0.0 || v >= 1.0) throw std::domain_error("GluingProfile: v out of [0,1)");
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  return std::exp(1.0 / v) - std::exp(1.0);
}

double GluingProfile::v_of_neck(double r) const {
  if (!(r > 0.0)) throw std::domain_error("GluingProfile: neck must be positive");
  return 1.0 / std::log(r + std::exp(1.0));
}

void GluingProfile::validate() const {
  if (!(v0 > 0.0 && v0 < 1.0)) throw std::invalid_argument("GluingProfile: v0 out of (0,1)");
  double prev = neck(v0);
  if (!(prev > 4.0)) throw std::invalid_argument("GluingProfile: R(v0) must exceed 4");
  for (double v = v0; v > 0.02; v -= 0.01) {
    const double r = neck(v);
    if (r < prev - 1e-12) throw std::invalid_argument("GluingProfile: not decreasing in v");
    prev = r;
  }
}

GluingSetup GluingSetup::make(const GridFunction& phi, const GridFunction& psi,
                              GluingProfile profile) {
  if ((phi.right_limit() - psi.left_limit()).norm() > 1e-9)
    throw std::invalid_argument("GluingSetup: reference paths do not match at the break");
  GluingSetup s;
  s.left = LocalSlice::from_reference(phi);
  s.right = LocalSlice::from_reference(psi);
  s.middle = phi.right_limit();
  s.profile = profile;
  s.profile.validate();
  s.split_neck = 2.0 * (phi.half_width() - 4.0);
  return s;
}

void GluingSetup::validate_triple(const GluedTriple& x, double tol) const {
  if (x.v < 0.0 || x.v >= profile.v0)
    throw std::invalid_argument("GluedTriple: v outside [0, v0)");
  if (std::abs(left.condition(x.u)) > tol * std::max(1.0, left.normal.norm()))
    throw std::invalid_argument("GluedTriple: left slice condition violated");
  if (std::abs(right.condition(x.w)) > tol * std::max(1.0, right.normal.norm()))
    throw std::invalid_argument("GluedTriple: right slice condition violated");
}

namespace {

void check_preglue_inputs(double R, const GridFunction& ga, const GridFunction& gb,
                          double tail_tol) {
  if ((ga.right_limit() - gb.left_limit()).norm() > tail_tol)
    throw std::invalid_argument("preglue: limits do not match at the breaking point");
  if (R < 2.0 || R > 2.0 * (ga.half_width() - 2.0))
    throw std::domain_error("preglue: R out of range for grid");
  if (!ga.same_grid(gb)) throw std::invalid_argument("preglue: grid mismatch");
}

Vector beta_samples(const GridFunction& like) {
  Vector b(like.size());
  for (int i = 0; i < like.size(); ++i) b[i] = cutoff_beta(like.t(i));
  return b;
}

}  // namespace

GridFunction preglue(double R, const GridFunction& gamma_a, const GridFunction& gamma_b,
                     double tail_tol) {
  check_preglue_inputs(R, gamma_a, gamma_b, tail_tol);
  const GridFunction a = shift(R / 2.0, gamma_a);
  const GridFunction b = shift(-R / 2.0, gamma_b);
  const Vector beta = beta_samples(gamma_a);
  Matrix vals(gamma_a.size(), gamma_a.dim());
  for (int i = 0; i < gamma_a.size(); ++i)
    vals.row(i) = beta[i] * a.values().row(i) + (1.0 - beta[i]) * b.values().row(i);
  return GridFunction(gamma_a.half_width(), gamma_a.spacing(), std::move(vals),
                      gamma_a.left_limit(), gamma_b.right_limit());
}

GridFunction antiglue(double R, const GridFunction& gamma_a, const GridFunction& gamma_b,
                      double tail_tol) {
  check_preglue_inputs(R, gamma_a, gamma_b, tail_tol);
  const Vector m = gamma_a.right_limit();
  const GridFunction a = shift(R / 2.0, gamma_a);
  const GridFunction b = shift(-R / 2.0, gamma_b);
  const Vector beta = beta_samples(gamma_a);
  Matrix vals(gamma_a.size(), gamma_a.dim());
  for (int i = 0; i < gamma_a.size(); ++i)
    vals.row(i) = (beta[i] - 1.0) * (a.values().row(i) - m.transpose()) +
                  beta[i] * (b.values().row(i) - m.transpose());
  return GridFunction(gamma_a.half_width(), gamma_a.spacing(), std::move(vals),
                      Vector::Zero(gamma_a.dim()), Vector::Zero(gamma_a.dim()));
}

std::pair<GridFunction, GridFunction> boxglue(double R, const GridFunction& gamma_a,
                                              const GridFunction& gamma_b, double tail_tol) {
  return {preglue(R, gamma_a, gamma_b, tail_tol), antiglue(R, gamma_a, gamma_b, tail_tol)};
}

std::pair<GridFunction, GridFunction> boxglue_inverse(double R, const GridFunction& glued,
                                                      const GridFunction& anti,
                                                      const Vector& left_a, const Vector& middle,
                                                      const Vector& right_b) {
  if (!glued.same_grid(anti)) throw std::invalid_argument("boxglue_inverse: grid mismatch");
  const Vector beta = beta_samples(glued);
  Matrix xa(glued.size(), glued.dim());
  Matrix xb(glued.size(), glued.dim());
  for (int i = 0; i < glued.size(); ++i) {
    const double bta = beta[i];
    const double det = bta * bta + (1.0 - bta) * (1.0 - bta);
    // inverse of [[beta, 1-beta], [beta-1, beta]] applied to (g - m, k)
    const auto g = (glued.values().row(i).transpose() - middle).eval();
    const auto k = anti.values().row(i).transpose().eval();
    xa.row(i) = ((bta * g + (bta - 1.0) * k) / det).transpose();
    xb.row(i) = (((1.0 - bta) * g + bta * k) / det).transpose();
  }
  GridFunction a_shifted(glued.half_width(), glued.spacing(), std::move(xa), left_a - middle,
                         Vector::Zero(glued.dim()));
  GridFunction b_shifted(glued.half_width(), glued.spacing(), std::move(xb),
                         Vector::Zero(glued.dim()), right_b - middle);
  GridFunction ga = shift(-R / 2.0, a_shifted);
  GridFunction gb = shift(R / 2.0, b_shifted);
  // restore the matching value
  Matrix va = ga.values().rowwise() + middle.transpose();
  Matrix vb = gb.values().rowwise() + middle.transpose();
  return {GridFunction(glued.half_width(), glued.spacing(), std::move(va), left_a, middle),
          GridFunction(glued.half_width(), glued.spacing(), std::move(vb), middle, right_b)};
}

double cutoff_matrix_min_determinant(const GridFunction& grid_like) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_like.size(); ++i) {
    const double b = cutoff_beta(grid_like.t(i));
    best = std::min(best, b * b + (1.0 - b) * (1.0 - b));
  }
  return best;
}

GluedTriple retract(const GluingSetup& setup, const GluedTriple& x) {
  if (x.v == 0.0) return x;
  const double R = setup.profile.neck(x.v);
  if (R > setup.split_neck) {
    // Decoupled band: the antigluing contributions vanish at grid
    // resolution, so the retraction is the identity.
    return x;
  }
  const GridFunction ga = setup.left_path(x);
  const GridFunction gb = setup.right_path(x);
  const GridFunction glued = preglue(R, ga, gb, setup.tail_tol);
  const GridFunction zero_anti = GridFunction::zero(glued.dim(), glued.half_width(), glued.spacing());
  auto [ga2, gb2] = boxglue_inverse(R, glued, zero_anti, ga.left_limit(), setup.middle,
                                    gb.right_limit());
  GluedTriple out;
  out.v = x.v;
  out.u = setup.left.project(ga2 - setup.left.reference);
  out.w = setup.right.project(gb2 - setup.right.reference);
  return out;
}

double antiglue_norm(const GluingSetup& setup, const GluedTriple& x) {
  if (x.v == 0.0) return 0.0;
  const double R = setup.profile.neck(x.v);
  if (R > setup.split_neck) return 0.0;
  return l2_norm(antiglue(R, setup.left_path(x), setup.right_path(x), setup.tail_tol));
}

double triple_distance(const GluedTriple& a, const GluedTriple& b) {
  const double dv = a.v - b.v;
  const double du = l2_norm(a.u - b.u);
  const double dw = l2_norm(a.w - b.w);
  return std::sqrt(dv * dv + du * du + dw * dw);
}

std::vector<TangentVector> tangent_probe_basis(const GluingSetup& setup, double neck,
                                               std::uint64_t seed) {
  std::vector<TangentVector> probes;
  const auto& g0 = setup.left.reference;
  auto zero = GridFunction::zero(g0.dim(), g0.half_width(), g0.spacing());

  // one gluing-parameter direction
  probes.push_back({1.0, zero, zero});

  ProbeRng rng(seed);
  // independent-slot bumps: 6 in u, 5 in w
  for (int i = 0; i < 11; ++i) {
    auto b = band_limited_bump(rng, g0.dim(), g0.half_width(), g0.spacing());
    TangentVector tv{0.0, zero, zero};
    if (i % 2 == 0)
      tv.du = setup.left.project(b);
    else
      tv.dw = setup.right.project(b);
    probes.push_back(tv);
  }
  // antiglue-type pairs at the supplied neck: in the kernel of the glued
  // component, so the retraction must annihilate them
  const Vector beta = beta_samples(zero);
  for (int i = 0; i < 12; ++i) {
    auto eta = band_limited_bump(rng, g0.dim(), g0.half_width(), g0.spacing());
    Matrix up(eta.size(), eta.dim()), wp(eta.size(), eta.dim());
    for (int r = 0; r < eta.size(); ++r) {
      up.row(r) = (1.0 - beta[r]) * eta.values().row(r);
      wp.row(r) = -beta[r] * eta.values().row(r);
    }
    TangentVector tv{0.0, shift(-neck / 2.0, zero.with_values(std::move(up))),
                     shift(neck / 2.0, zero.with_values(std::move(wp)))};
    tv.du = setup.left.project(tv.du);
    tv.dw = setup.right.project(tv.dw);
    probes.push_back(tv);
  }
  return probes;
}

namespace {

Vector flatten(const TangentVector& t, double sqrt_h) {
  const int n = t.du.size() * t.du.dim();
  Vector out(1 + 2 * n);
  out[0] = t.dv;
  Eigen::Map<const Vector> du(t.du.values().data(), n);
  Eigen::Map<const Vector> dw(t.dw.values().data(), n);
  out.segment(1, n) = du * sqrt_h;
  out.segment(1 + n, n) = dw * sqrt_h;
  return out;
}

}  // namespace

TangentRetractReport tangent_retract(const GluingSetup& setup, const GluedTriple& x,
                                     const std::vector<TangentVector>& probes) {
  const double eps = 1e-5;
  auto apply = [&](const TangentVector& z) -> TangentVector {
    GluedTriple plus{std::max(x.v + eps * z.dv, 0.0), x.u + z.du * eps, x.w + z.dw * eps};
    GluedTriple minus{std::max(x.v - eps * z.dv, 0.0), x.u - z.du * eps, x.w - z.dw * eps};
    if (x.v == 0.0 && z.dv != 0.0) {
      // one-sided at the boundary stratum
      plus = GluedTriple{eps * std::abs(z.dv), x.u + z.du * eps, x.w + z.dw * eps};
      const GluedTriple rp = retract(setup, plus);
      const GluedTriple r0 = retract(setup, x);
      return TangentVector{(rp.v - r0.v) / eps, (rp.u - r0.u) * (1.0 / eps),
                           (rp.w - r0.w) * (1.0 / eps)};
    }
    const GluedTriple rp = retract(setup, plus);
    const GluedTriple rm = retract(setup, minus);
    return TangentVector{(rp.v - rm.v) / (2.0 * eps), (rp.u - rm.u) * (1.0 / (2.0 * eps)),
                         (rp.w - rm.w) * (1.0 / (2.0 * eps))};
  };

  TangentRetractReport rep;
  rep.probe_count = static_cast<int>(probes.size());
  const double sqrt_h = std::sqrt(x.u.spacing());
  Matrix images(flatten(probes[0], sqrt_h).size(), probes.size());
  double defect = 0.0;
  bool identity = true;
  for (size_t j = 0; j < probes.size(); ++j) {
    const TangentVector once = apply(probes[j]);
    const TangentVector twice = apply(once);
    const Vector v_once = flatten(once, sqrt_h);
    const Vector v_twice = flatten(twice, sqrt_h);
    defect = std::max(defect, (v_twice - v_once).norm());
    images.col(j) = v_once;
    if ((v_once - flatten(probes[j], sqrt_h)).norm() > 1e-8 * (1.0 + v_once.norm()))
      identity = false;
  }
  rep.projection_defect = defect;
  rep.identity_on_probes = identity;
  Eigen::JacobiSVD<Matrix> svd(images);
  const auto& sv = svd.singularValues();
  const double tol = 1e-6 * std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rep.rank;
  return rep;
}

SplicingCorePoint splicing_core(double t, const GridFunction& e) {
  if (e.dim() != 1) throw std::invalid_argument("splicing_core: scalar functions only");
  SplicingCorePoint out;
  out.t = t;
  const auto d = splicing_diagnostics(t, e);
  if (t <= 0.0 || d.generator_norm < 1e-12) {
    out.e = GridFunction::zero(1, e.half_width(), e.spacing());
    return out;
  }
  const double offset = std::exp(1.0 / t);
  GridFunction beta_t = GridFunction::sample_scalar(
      e.half_width(), e.spacing(), [offset](double s) { return unit_bump(offset + s); }, 0.0, 0.0);
  const double nu = l2_norm(beta_t);
  const double coeff = l2_inner(e, beta_t) / (nu * nu);
  out.e = beta_t * coeff;
  return out;
}

SplicingDiagnostics splicing_diagnostics(double t, const GridFunction& e) {
  SplicingDiagnostics d;
  if (t <= 0.0) return d;
  const double offset = std::exp(1.0 / t);
  GridFunction beta_t = GridFunction::sample_scalar(
      e.half_width(), e.spacing(), [offset](double s) { return unit_bump(offset + s); }, 0.0, 0.0);
  d.generator_norm = l2_norm(beta_t);
  if (d.generator_norm < 1e-12) return d;
  d.projected_norm = std::abs(l2_inner(e, beta_t)) / d.generator_norm;
  return d;
}

int degeneracy_index(const Vector& sector_coords) {
  int count = 0;
  for (int i = 0; i < sector_coords.size(); ++i) {
    if (sector_coords[i] < 0.0)
      throw std::domain_error("degeneracy_index: negative sector coordinate");
    if (sector_coords[i] == 0.0) ++count;
  }
  return count;
}

}  // namespace sc

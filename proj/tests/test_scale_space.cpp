#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scpoly/cutoffs.hpp"
#include "scpoly/probes.hpp"
#include "scpoly/scale_space.hpp"

using namespace sc;

namespace {

constexpr double kT = 20.0;
constexpr double kH = 0.05;

double logistic(double t) { return 1.0 / (1.0 + std::exp(-6.0 * t)); }

GridFunction logistic_tail() {
  // logistic minus its step profile: decays like e^{-6|t|} on both sides
  return GridFunction::sample_scalar(
      kT, kH, [](double t) { return logistic(t) - (t >= 0.0 ? 1.0 : 0.0); }, 0.0, 0.0);
}

}  // namespace

TEST_CASE("scale ladder validation") {
  auto s = ScaleStructure::default_ladder();
  CHECK(s.num_levels() == 4);
  CHECK_NOTHROW(s.validate(6.0));
  CHECK_THROWS(s.validate(1.0));  // sup delta = 1.2 not below 1.0
  ScaleStructure bad = s;
  bad.levels[0].weight = 0.5;
  CHECK_THROWS(bad.validate(6.0));
}

TEST_CASE("weighted norm of the zero function is zero") {
  auto z = GridFunction::zero(2, kT, kH);
  CHECK(weighted_norm(z, 2, 0.0) == 0.0);
  CHECK(weighted_norm(z, 3, 2.0) == 0.0);
}

TEST_CASE("logistic tail norm: finite below the decay rate, divergent above") {
  // oracle: direct quadrature at increasing half-widths; the norm stabilizes
  // for delta < 6 and keeps growing for delta = 7 until the guard trips
  auto tail_norm = [](double half_width, double delta) {
    auto u = GridFunction::sample_scalar(
        half_width, kH, [](double t) { return logistic(t) - (t >= 0.0 ? 1.0 : 0.0); }, 0.0, 0.0);
    return weighted_norm(u, 0, delta);
  };
  const double n10 = tail_norm(10.0, 5.0);
  const double n20 = tail_norm(20.0, 5.0);
  CHECK(std::abs(n20 - n10) / n20 < 1e-8);  // converged: delta < decay rate

  const double d10 = tail_norm(10.0, 7.0);
  const double d20 = tail_norm(20.0, 7.0);
  CHECK(d20 / d10 > 1e3);  // grows like e^{(delta-6)T}
  CHECK_THROWS_AS(tail_norm(40.0, 7.0), NormOverflow);
}

TEST_CASE("norm monotone in order and weight") {
  ProbeRng rng(17);
  auto s = ScaleStructure::default_ladder();
  for (int i = 0; i < 100; ++i) {
    auto u = band_limited_bump(rng, 1, kT, kH);
    CHECK(weighted_norm(u, 1, 0.0) <= weighted_norm(u, 2, 1.0) * (1 + 1e-12));
    auto r = level_embedding_check(u, s, 2, 0);
    CHECK(r.passes);
    CHECK(r.constant <= 1.0 + 1e-12);
  }
}

TEST_CASE("norm is absolutely homogeneous and satisfies the triangle inequality") {
  ProbeRng rng(5);
  for (int i = 0; i < 40; ++i) {
    auto u = band_limited_bump(rng, 2, kT, kH);
    auto v = band_limited_bump(rng, 2, kT, kH);
    const double c = rng.uniform(-3.0, 3.0);
    const int m = rng.uniform_int(0, 2);
    const double d = static_cast<double>(rng.uniform_int(0, 3));
    const double nu = weighted_norm(u, m, d);
    const double nv = weighted_norm(v, m, d);
    CHECK(weighted_norm(u * c, m, d) == doctest::Approx(std::abs(c) * nu).epsilon(1e-12));
    CHECK(weighted_norm(u + v, m, d) <= (nu + nv) * (1.0 + 1e-12));
  }
}

TEST_CASE("derivative: constants, sine, logistic") {
  auto c = GridFunction::constant(Vector::Constant(1, 3.5), kT, kH);
  CHECK(l2_norm(derivative(c)) == doctest::Approx(0.0));

  auto s = GridFunction::sample_scalar(kT, kH, [](double t) { return std::sin(t); }, 0.0, 0.0);
  auto ds = derivative(s);
  double err = 0.0;
  for (int i = 0; i < s.size(); ++i) err = std::max(err, std::abs(ds.values()(i, 0) - std::cos(s.t(i))));
  CHECK(err < 10.0 * std::pow(kH, 4));

  auto lg = GridFunction::sample_scalar(kT, kH, logistic, 0.0, 1.0);
  auto dl = derivative(lg);
  CHECK(dl.values()(lg.node_of(0.0), 0) == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("spectral derivative nails the logistic exactly") {
  auto lg = GridFunction::sample_scalar(kT, kH, logistic, 0.0, 1.0);
  auto dl = spectral_derivative(lg);
  double err = 0.0;
  for (int i = 0; i < lg.size(); ++i) {
    const double x = logistic(lg.t(i));
    err = std::max(err, std::abs(dl.values()(i, 0) - 6.0 * x * (1.0 - x)));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("shift: identity, group law, closed form, equivariances") {
  auto lg = GridFunction::sample_scalar(kT, kH, logistic, 0.0, 1.0);
  CHECK(shift(0.0, lg).sup_distance(lg) < 1e-12);

  ProbeRng rng(23);
  Vector right(2);
  right << 1.0, 0.3;
  auto base = GridFunction::sample(
      kT, kH,
      [](double t) {
        Vector v(2);
        v[0] = logistic(t);
        v[1] = 0.3 * logistic(t - 1.0);
        return v;
      },
      Vector::Zero(2), right);
  auto u = base + band_limited_bump(rng, 2, kT, kH);

  // group law within tolerance (spectral: far below the 10 h^3 contract)
  const double tol = 10.0 * std::pow(kH, 3);
  auto a = shift(1.3, shift(2.2, u));
  auto b = shift(3.5, u);
  CHECK(a.sup_distance(b) < tol);

  // closed form for the shifted logistic
  auto shifted = shift(0.7, lg);
  double err = 0.0;
  for (int i = 0; i < lg.size(); ++i)
    err = std::max(err, std::abs(shifted.values()(i, 0) - logistic(lg.t(i) + 0.7)));
  CHECK(err < tol);

  // norm preserved at delta = 0; at delta > 0 bounded by the exponential
  // factor e^{delta c |s|} with c the Lipschitz constant of the weight
  // exponent t beta_w(t)
  double c_w = 0.0;
  for (double t = -2.0; t <= 2.0; t += 1e-3)
    c_w = std::max(c_w, std::abs(sc::weight_exponent_prime(t)));
  ProbeRng rng2(29);
  for (int i = 0; i < 20; ++i) {
    auto w = band_limited_bump(rng2, 1, kT, kH);
    const double s = rng2.uniform(-3.0, 3.0);
    auto ws = shift(s, w);
    CHECK(weighted_norm(ws, 2, 0.0) ==
          doctest::Approx(weighted_norm(w, 2, 0.0)).epsilon(1e-6));
    const double grow = weighted_norm(ws, 2, 0.8) / weighted_norm(w, 2, 0.8);
    CHECK(grow <= std::exp(0.8 * c_w * std::abs(s)) * (1.0 + 1e-3));
  }

  // derivative commutes with shift
  auto d_then_s = shift(1.1, derivative(u));
  auto s_then_d = derivative(shift(1.1, u));
  CHECK(d_then_s.sup_distance(s_then_d) < tol);

  CHECK_THROWS(shift(25.0, u));
}

TEST_CASE("traveling bump: bounded on every level, no convergent subsequence at level 0") {
  // unweighted ladder for this witness (the compact-domain picture)
  auto f0 = GridFunction::sample_scalar(
      kT, kH, [](double t) { return std::exp(-2.0 * t * t); }, 0.0, 0.0);
  std::vector<GridFunction> seq;
  for (int n = 0; n <= 5; ++n) seq.push_back(shift(static_cast<double>(n), f0));
  // bounded in every unweighted order
  for (int m = 0; m <= 3; ++m) {
    const double base = weighted_norm(f0, m, 0.0);
    for (const auto& g : seq) CHECK(weighted_norm(g, m, 0.0) == doctest::Approx(base).epsilon(1e-6));
  }
  // pairwise level-0 distances bounded below: no Cauchy subsequence
  const double unit = weighted_norm(f0, 2, 0.0);
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j)
      CHECK(weighted_norm(seq[i] - seq[j], 2, 0.0) > 0.5 * unit);
}

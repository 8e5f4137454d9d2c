#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "scpoly/fourier.hpp"
#include "scpoly/probes.hpp"

using namespace sc;

namespace {

// Quadratic-cost reference DFT, the oracle the fast transform is checked
// against.
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a,
                                            bool inverse) {
  const int n = static_cast<int>(a.size());
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < n; ++j)
      acc += a[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi * j * k / n);
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft matches the naive DFT oracle on awkward sizes") {
  ProbeRng rng(7);
  for (int n : {1, 2, 3, 8, 12, 25, 40, 100, 800}) {
    std::vector<std::complex<double>> a(n);
    for (auto& z : a) z = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    auto fast = a;
    fft_inplace(fast, false);
    auto slow = naive_dft(a, false);
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(fast[i] - slow[i]));
    CHECK(err < 1e-10 * std::max(1, n));

    auto back = fast;
    fft_inplace(back, true);
    double round = 0.0;
    for (int i = 0; i < n; ++i) round = std::max(round, std::abs(back[i] / double(n) - a[i]));
    CHECK(round < 1e-12 * std::max(1, n));
  }
}

TEST_CASE("periodic_shift translates band-limited signals exactly") {
  const int n = 800;
  const double period = 40.0;
  Vector x(n);
  for (int i = 0; i < n; ++i) {
    const double t = period * i / n;
    x[i] = std::sin(2.0 * std::numbers::pi * 3.0 * t / period) +
           0.5 * std::cos(2.0 * std::numbers::pi * 11.0 * t / period);
  }
  const double s = 1.2345;
  Vector y = periodic_shift(x, s, period);
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = period * i / n + s;
    const double expect = std::sin(2.0 * std::numbers::pi * 3.0 * t / period) +
                          0.5 * std::cos(2.0 * std::numbers::pi * 11.0 * t / period);
    err = std::max(err, std::abs(y[i] - expect));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("periodic_shift composes to the identity") {
  ProbeRng rng(11);
  const int n = 800;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1, 1);
  // remove the Nyquist mode, which the real shift damps by design
  Vector x2 = periodic_shift(x, 0.0, 40.0);
  for (double s : {0.3, 5.77, 13.1}) {
    Vector y = periodic_shift(periodic_shift(x2, s, 40.0), -s, 40.0);
    CHECK((y - x2).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("periodic_shift group law") {
  ProbeRng rng(3);
  const int n = 400;
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1, 1);
  x = periodic_shift(x, 0.0, 40.0);
  Vector a = periodic_shift(periodic_shift(x, 1.7, 40.0), 2.6, 40.0);
  Vector b = periodic_shift(x, 4.3, 40.0);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("spectral derivative matrix differentiates trig polynomials exactly") {
  const int n = 100;
  const double period = 40.0;
  Matrix d = spectral_derivative_matrix(n, period);
  Vector x(n), dx(n);
  const double w = 2.0 * std::numbers::pi * 4.0 / period;
  for (int i = 0; i < n; ++i) {
    const double t = period * i / n;
    x[i] = std::sin(w * t);
    dx[i] = w * std::cos(w * t);
  }
  CHECK((d * x - dx).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("trig interpolant evaluates samples and shifts consistently") {
  const int n = 800;
  const double period = 40.0, origin = -20.0, step = period / n;
  Vector x(n);
  for (int i = 0; i < n; ++i) {
    const double t = origin + step * i;
    x[i] = std::exp(-0.5 * t * t) * std::cos(1.5 * t);
  }
  TrigInterpolant f(x, origin, step);
  // reproduces the samples
  double err = 0.0;
  for (int i = 0; i < n; ++i) err = std::max(err, std::abs(f.value(origin + step * i) - x[i]));
  CHECK(err < 1e-11);
  // evaluation commutes with the spectral shift
  const double s = 0.777;
  Vector y = periodic_shift(x, s, period);
  TrigInterpolant g(y, origin, step);
  for (double t : {-3.0, 0.1, 2.9}) CHECK(g.value(t) == doctest::Approx(f.value(t + s)).epsilon(1e-11));
  // derivative matches an analytic derivative for a smooth decaying function
  for (double t : {-2.0, 0.5, 1.75}) {
    const double expect =
        std::exp(-0.5 * t * t) * (-t * std::cos(1.5 * t) - 1.5 * std::sin(1.5 * t));
    CHECK(f.derivative(t) == doctest::Approx(expect).epsilon(1e-8));
  }
}

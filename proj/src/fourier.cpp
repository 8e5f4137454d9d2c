#include "scpoly/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sc {

namespace {

int smallest_prime_factor(int n) {
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const int n = static_cast<int>(a.size());
  if (n <= 1) return;
  const int p = smallest_prime_factor(n);
  const int m = n / p;

  // Decimate into p interleaved subsequences and transform each.
  std::vector<std::vector<std::complex<double>>> part(p);
  for (int r = 0; r < p; ++r) {
    part[r].resize(m);
    for (int j = 0; j < m; ++j) part[r][j] = a[j * p + r];
    fft_inplace(part[r], inverse);
  }

  const double sign = inverse ? 1.0 : -1.0;
  const double base = sign * 2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int r = 0; r < p; ++r) {
      const double ang = base * static_cast<double>(r) * static_cast<double>(k);
      acc += std::polar(1.0, ang) * part[r][k % m];
    }
    a[k] = acc;
  }
}

std::vector<std::complex<double>> real_dft(const Vector& x) {
  std::vector<std::complex<double>> a(x.size());
  for (int i = 0; i < x.size(); ++i) a[i] = std::complex<double>(x[i], 0.0);
  fft_inplace(a, false);
  return a;
}

Vector periodic_shift(const Vector& samples, double s, double period) {
  const int n = static_cast<int>(samples.size());
  if (n == 0) return samples;
  if (period <= 0.0) throw std::invalid_argument("periodic_shift: period must be positive");

  auto a = real_dft(samples);
  const double theta = 2.0 * std::numbers::pi * s / period;
  for (int k = 0; k < n; ++k) {
    const int signed_k = (k <= n / 2) ? k : k - n;
    if (n % 2 == 0 && k == n / 2) {
      // The Nyquist mode of a real signal cannot be phase shifted; it is
      // projected out so that shifts compose exactly.
      a[k] = 0.0;
    } else {
      a[k] *= std::polar(1.0, theta * signed_k);
    }
  }
  fft_inplace(a, true);
  Vector out(n);
  for (int i = 0; i < n; ++i) out[i] = a[i].real() / n;
  return out;
}

Matrix spectral_derivative_matrix(int n, double period) {
  // Closed form for even n: D_ij = (pi/period) * (-1)^{i-j} cot(pi (i-j)/n).
  Matrix d = Matrix::Zero(n, n);
  const double pi = std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int k = i - j;
      double entry;
      if (n % 2 == 0) {
        entry = (pi / period) * ((k % 2 == 0) ? 1.0 : -1.0) / std::tan(pi * k / n);
      } else {
        entry = (pi / period) * ((k % 2 == 0) ? 1.0 : -1.0) / std::sin(pi * k / n);
      }
      d(i, j) = entry;
    }
  }
  return d;
}

Matrix periodic_shift_matrix(int n, double s, double period) {
  Matrix m(n, n);
  Vector e = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    m.col(j) = periodic_shift(e, s, period);
    e[j] = 0.0;
  }
  return m;
}

TrigInterpolant::TrigInterpolant(const Vector& samples, double origin, double step)
    : origin_(origin), period_(step * samples.size()), n_(static_cast<int>(samples.size())) {
  auto a = real_dft(samples);
  const int half = n_ / 2;
  cos_coeff_ = Vector::Zero(half + 1);
  sin_coeff_ = Vector::Zero(std::max(half, 1));
  cos_coeff_[0] = a[0].real() / n_;
  for (int k = 1; k < half; ++k) {
    cos_coeff_[k] = 2.0 * a[k].real() / n_;
    sin_coeff_[k] = -2.0 * a[k].imag() / n_;
  }
  // Nyquist dropped, matching periodic_shift.
  if (n_ % 2 == 0 && half >= 1) cos_coeff_[half] = 0.0;
}

double TrigInterpolant::value(double t) const {
  const double w = 2.0 * std::numbers::pi * (t - origin_) / period_;
  double acc = cos_coeff_[0];
  const int half = n_ / 2;
  for (int k = 1; k < half; ++k)
    acc += cos_coeff_[k] * std::cos(k * w) + sin_coeff_[k] * std::sin(k * w);
  if (n_ % 2 == 0 && half >= 1) acc += cos_coeff_[half] * std::cos(half * w);
  return acc;
}

double TrigInterpolant::derivative(double t) const {
  const double scale = 2.0 * std::numbers::pi / period_;
  const double w = scale * (t - origin_);
  double acc = 0.0;
  const int half = n_ / 2;
  for (int k = 1; k < half; ++k)
    acc += k * scale * (-cos_coeff_[k] * std::sin(k * w) + sin_coeff_[k] * std::cos(k * w));
  if (n_ % 2 == 0 && half >= 1) acc += -half * scale * cos_coeff_[half] * std::sin(half * w);
  return acc;
}

}  // namespace sc

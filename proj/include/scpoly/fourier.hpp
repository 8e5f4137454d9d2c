#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

// Trigonometric machinery on a uniform periodic grid.  Everything that moves
// samples sideways (the shift action, pregluing, chart normalization) goes
// through these routines so that shifting forward and backward composes to
// the identity up to roundoff.

namespace sc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// In-place mixed-radix FFT, any length >= 1.  inverse=true applies the
// unscaled inverse transform (caller divides by n).
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// Forward DFT of a real vector; returns n complex coefficients.
std::vector<std::complex<double>> real_dft(const Vector& x);

// Samples of the trigonometric interpolant of `samples` (period = n*step)
// translated by s: out[i] = interp(t_i + s).  Exactly invertible:
// periodic_shift(periodic_shift(x, s), -s) == x up to roundoff for inputs
// with no energy at the Nyquist mode (the Nyquist mode is damped by cos).
Vector periodic_shift(const Vector& samples, double s, double period);

// Dense matrix of the spectral differentiation operator on n periodic
// nodes.  Exact for trigonometric polynomials below the Nyquist mode.
Matrix spectral_derivative_matrix(int n, double period);

// Dense matrix representation of periodic_shift(., s, period).
Matrix periodic_shift_matrix(int n, double s, double period);

// Point evaluation of the trigonometric interpolant of one period of
// samples; grid point i sits at origin + i*step, period = n*step.
class TrigInterpolant {
 public:
  TrigInterpolant(const Vector& samples, double origin, double step);

  double value(double t) const;
  double derivative(double t) const;

 private:
  double origin_ = 0.0;
  double period_ = 1.0;
  int n_ = 0;
  Vector cos_coeff_;  // k = 0..n/2
  Vector sin_coeff_;  // k = 1..n/2-1
};

}  // namespace sc

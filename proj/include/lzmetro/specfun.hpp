#pragma once

// Special functions on the line z = 1 - i a: complex log-gamma and the
// digamma line integrals theta_1(a), eta_1(a).

#include <complex>

namespace lzm::specfun {

/// log|Gamma(z)| and principal arg Gamma(z) in (-pi, pi].
struct LogGammaValue {
  double log_modulus = 0.0;
  double argument = 0.0;
};

/// Lanczos (g = 7, nine terms) with reflection for Re z < 1/2.
/// Throws PoleError when z is a non-positive integer.
LogGammaValue log_gamma_complex(std::complex<double> z);

/// Continuous-branch log Gamma(z), i.e. the value whose imaginary part is not
/// wrapped into (-pi, pi]. Same domain as log_gamma_complex.
std::complex<double> log_gamma(std::complex<double> z);

struct QuadratureResult {
  double value = 0.0;
  /// Upper bound on |value - exact| (quadrature + truncation + rounding).
  double error_estimate = 0.0;
};

/// theta_1(a) = Re psi(1 - i a)
///            = int_0^inf [ e^-t / t - e^-t cos(a t) / (1 - e^-t) ] dt.
/// Throws NumericalError (with the achieved error estimate) if the
/// adaptive quadrature cannot reach 1e-9 absolute.
QuadratureResult theta1_with_error(double a);
double theta1(double a);

/// eta_1(a) = int_0^inf sin(a t) / (e^t - 1) dt = (pi a coth(pi a) - 1) / (2 a).
double eta1(double a);

/// psi(1 - i a) = theta_1(a) - i eta_1(a).
std::complex<double> digamma_one_minus_ia(double a);

}  // namespace lzm::specfun

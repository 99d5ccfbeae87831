#include "lzmetro/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lzmetro/errors.hpp"
#include "lzmetro/linalg.hpp"

namespace lzm::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

bool is_pole(std::complex<double> z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Valid for Re z >= 1/2.
std::complex<double> lanczos_log_gamma(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

// e^-t / t - cos(a t) / (e^t - 1), written over the common denominator
// t (e^t - 1) so the 1/t singularities cancel analytically.
double theta_integrand(double t, double a) {
  if (t == 0.0) return -0.5;
  double head;  // 1 - e^-t - t
  if (t < 1e-4) {
    head = t * t * (-0.5 + t * (1.0 / 6 + t * (-1.0 / 24 + t / 120)));
  } else {
    head = -std::expm1(-t) - t;
  }
  const double s = std::sin(0.5 * a * t);
  return (head + 2.0 * t * s * s) / (t * std::expm1(t));
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (is_pole(z)) {
    std::ostringstream msg;
    msg << "log_gamma: pole at z = " << z.real();
    throw PoleError(msg.str());
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

LogGammaValue log_gamma_complex(std::complex<double> z) {
  const std::complex<double> lg = log_gamma(z);
  return {lg.real(), wrap_angle(lg.imag())};
}

QuadratureResult theta1_with_error(double a) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr double kSplit = 1.0;
  constexpr double kCutoff = 45.0;
  constexpr unsigned kMaxDepth = 25;
  constexpr double kRelTol = 1e-13;
  constexpr double kMaxError = 1e-9;

  auto f = [a](double t) { return theta_integrand(t, a); };
  double err_head = 0.0, err_tail = 0.0, l1_head = 0.0, l1_tail = 0.0;
  const double head = gauss_kronrod<double, 31>::integrate(f, 0.0, kSplit, kMaxDepth, kRelTol,
                                                           &err_head, &l1_head);
  const double tail = gauss_kronrod<double, 31>::integrate(f, kSplit, kCutoff, kMaxDepth, kRelTol,
                                                           &err_tail, &l1_tail);
  // |integrand| <= 2.03 e^-t beyond the cutoff.
  const double truncation = 2.03 * std::exp(-kCutoff);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * (l1_head + l1_tail);

  QuadratureResult out{head + tail, err_head + err_tail + truncation + rounding};
  if (!(out.error_estimate <= kMaxError) || !std::isfinite(out.value)) {
    std::ostringstream msg;
    msg << "theta1(" << a << "): quadrature did not converge, error estimate "
        << out.error_estimate;
    throw NumericalError(msg.str());
  }
  return out;
}

double theta1(double a) { return theta1_with_error(a).value; }

double eta1(double a) {
  const double x = kPi * a;
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return kPi * x / 6.0 * (1.0 - x2 / 15.0 + 2.0 * x2 * x2 / 315.0);
  }
  return (x / std::tanh(x) - 1.0) / (2.0 * a);
}

std::complex<double> digamma_one_minus_ia(double a) { return {theta1(a), -eta1(a)}; }

}  // namespace lzm::specfun

#pragma once

// Adaptive Dormand-Prince 5(4) integrator for linear complex systems
// y' = f(t, y) with y in C^N, with fourth-order continuous extension.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>

#include "lzmetro/errors.hpp"

namespace lzm::ode {

template <std::size_t N>
using Vec = std::array<std::complex<double>, N>;

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double last_step = 0.0;
};

namespace detail {

// Butcher tableau (Dormand & Prince 1980).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Error coefficients: fifth-order minus embedded fourth-order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output (Hairer, Norsett & Wanner, DOPRI5 contd5).
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace detail

/// Integrates y from t0 to t1 (t1 > t0). `sample_times` must be sorted and
/// lie in (t0, t1]; `on_sample(i, y)` is called for each with the interpolated
/// solution.
///
/// Error control is per unit length: a step of size h is accepted when
/// |err_i| <= tol * (1 + max(|y_i|, |y_new_i|)) * h / length for every
/// component, so the local errors summed over `length` stay below tol.
/// Pass the full propagation length when integrating piecewise.
///
/// Throws NumericalError on step-size underflow.
template <std::size_t N, class Rhs, class OnSample>
Vec<N> integrate(Rhs&& rhs, Vec<N> y, double t0, double t1, double tol,
                 std::span<const double> sample_times, OnSample&& on_sample, StepStats& stats,
                 double length, double initial_step = 0.0) {
  using namespace detail;
  using V = Vec<N>;
  auto axpy = [](V& out, const V& base, std::initializer_list<std::pair<double, const V*>> terms,
                 double h) {
    for (std::size_t i = 0; i < N; ++i) {
      std::complex<double> acc{};
      for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
      out[i] = base[i] + h * acc;
    }
  };

  const double span = t1 - t0;
  double t = t0;
  double h = initial_step > 0.0 ? std::min(initial_step, span) : std::min(span, 1e-2);
  std::size_t next_sample = 0;
  while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) ++next_sample;

  V k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  rhs(t, y, k1);

  constexpr double safety = 0.9, min_factor = 0.2, max_factor = 5.0;
  const double eps = std::numeric_limits<double>::epsilon();

  while (t < t1) {
    const bool last = t + h >= t1 - 16 * eps * std::abs(t1);
    if (last) h = t1 - t;
    if (h <= 16 * eps * std::max(1.0, std::abs(t))) {
      std::ostringstream msg;
      msg << "step size underflow at t=" << t << " (h=" << h << ")";
      throw NumericalError(msg.str());
    }

    axpy(ytmp, y, {{a21, &k1}}, h);
    rhs(t + c2 * h, ytmp, k2);
    axpy(ytmp, y, {{a31, &k1}, {a32, &k2}}, h);
    rhs(t + c3 * h, ytmp, k3);
    axpy(ytmp, y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h);
    rhs(t + c4 * h, ytmp, k4);
    axpy(ytmp, y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h);
    rhs(t + c5 * h, ytmp, k5);
    axpy(ytmp, y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h);
    rhs(t + h, ytmp, k6);
    axpy(ynew, y, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}}, h);
    const double t_new = last ? t1 : t + h;
    rhs(t_new, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const std::complex<double> e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale =
          tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i]))) * (h / length);
      err = std::max(err, std::abs(e) / scale);
    }

    if (err <= 1.0) {
      ++stats.accepted;
      stats.last_step = h;
      // Continuous extension for samples in (t, t_new].
      if (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
        V r2, r3, r4, r5;
        for (std::size_t i = 0; i < N; ++i) {
          r2[i] = ynew[i] - y[i];
          r3[i] = h * k1[i] - r2[i];
          r4[i] = r2[i] - h * k7[i] - r3[i];
          r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                       d7 * k7[i]);
        }
        while (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
          const double ts = sample_times[next_sample];
          V ys;
          if (ts == t_new) {
            ys = ynew;
          } else {
            const double th = (ts - t) / h;
            const double th1 = 1.0 - th;
            for (std::size_t i = 0; i < N; ++i)
              ys[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
          }
          on_sample(next_sample, ys);
          ++next_sample;
        }
      }
      t = t_new;
      y = ynew;
      k1 = k7;
      const double factor =
          err == 0.0 ? max_factor : std::clamp(safety * std::pow(err, -0.25), min_factor, max_factor);
      h *= factor;
    } else {
      ++stats.rejected;
      h *= std::max(min_factor, safety * std::pow(err, -0.25));
    }
  }
  return y;
}

}  // namespace lzm::ode

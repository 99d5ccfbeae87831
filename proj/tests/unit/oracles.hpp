#pragma once

// Independent reference implementations used only by the tests.

#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include "lzmetro/dynamics.hpp"
#include "lzmetro/linalg.hpp"

namespace oracle {

using lzm::cplx;

// Digamma by upward recurrence to Re z >= 20, then the Stirling series.
inline cplx digamma(cplx z) {
  cplx shift = 0.0;
  while (z.real() < 20.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const cplx w = 1.0 / (z * z);
  // B_2k / (2k): 1/12, -1/120, 1/252, -1/240, 1/132, -691/32760, 1/12
  const double c[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760,
                      1.0 / 12};
  cplx series = 0.0;
  cplx p = w;
  for (double ck : c) {
    series += ck * p;
    p *= w;
  }
  return shift + std::log(z) - 0.5 / z - series;
}

// Fixed-step classical RK4 for i dpsi/dt = H(t) psi (pulses not supported).
inline lzm::TwoLevelState rk4(const lzm::HamiltonianSchedule& h, lzm::TwoLevelState psi,
                              double t0, double t1, double dt) {
  const int n = static_cast<int>(std::ceil((t1 - t0) / dt));
  const double step = (t1 - t0) / n;
  auto f = [&](double t, const lzm::TwoLevelState& y) {
    return cplx(0.0, -1.0) * (h.matrix(t) * y);
  };
  double t = t0;
  for (int i = 0; i < n; ++i) {
    const auto k1 = f(t, psi);
    const auto k2 = f(t + step / 2, psi + (step / 2) * k1);
    const auto k3 = f(t + step / 2, psi + (step / 2) * k2);
    const auto k4 = f(t + step, psi + step * k3);
    psi = psi + (step / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t0 + (i + 1) * step;
  }
  return psi;
}

// exp(M) by scaling and squaring with a truncated Taylor series.
inline lzm::Mat2 expm(const lzm::Mat2& m) {
  double norm = 0.0;
  for (const auto& x : m.m) norm += std::abs(x);
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const lzm::Mat2 a = std::ldexp(1.0, -squarings) * m;
  lzm::Mat2 sum = lzm::Mat2::identity();
  lzm::Mat2 term = lzm::Mat2::identity();
  for (int k = 1; k < 30; ++k) {
    term = (1.0 / k) * (term * a);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline double max_abs(const lzm::TwoLevelState& a, const lzm::TwoLevelState& b) {
  return std::max(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// State at t_end with the parameter shifted by h; `build` maps the shifted
// parameter to (schedule, initial state).
inline lzm::TwoLevelState shifted(
    const std::function<std::pair<lzm::HamiltonianSchedule, lzm::TwoLevelState>(double)>& build,
    double g, double t0, double t1, double tol) {
  const auto [h, psi0] = build(g);
  lzm::PropagationOptions o;
  o.tol = tol;
  o.times = {t1};
  return lzm::propagate(h, psi0, t0, t1, o).final_state();
}

}  // namespace oracle

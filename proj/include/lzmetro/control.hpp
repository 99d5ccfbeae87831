#pragma once

// Optimal control plans: the control Hamiltonian added to the model, the
// level-crossing pulses and the initial state that saturate the QFI bound.

#include <array>

#include "lzmetro/analytic.hpp"
#include "lzmetro/dynamics.hpp"

namespace lzm {

/// Values standing in for unknown parameters when building the controls.
struct ControlEstimates {
  double v_c = 0.0;
  double omega_c = 0.0;
  double delta_c = 0.0;
};

struct ControlPlan {
  /// H + H_c with the pulse events.
  HamiltonianSchedule schedule;
  /// H_c alone (smooth part).
  HamiltonianSchedule control;
  TwoLevelState initial_state;
  EstimationProblem problem;
  double beta = 0.0;
  ControlEstimates estimates;
  int winding = 0;
  double t_start = 0.0;
  double t_end = 0.0;
};

/// sum_k f_k(t) |psi_k><psi_k| - H_model(t) for an orthonormal pair, as Pauli
/// coefficients. The identity part (f_0 + f_1) / 2 is dropped.
HamiltonianSchedule generic_och(const std::array<TwoLevelState, 2>& eigenbasis,
                                const std::array<RealFn, 2>& f,
                                const HamiltonianSchedule& model);

/// Target Delta: H_c = -(v_c t / 2) sz, start (|+x> + e^{i beta}|-x>) / sqrt2,
/// span [-t0, t_end], no pulses. `v_c` NaN means the true v.
ControlPlan plan_for_delta(const LZParams& params, double beta,
                           double v_c = std::numeric_limits<double>::quiet_NaN());

/// Target v: H_c = -(delta / 2) sx, one pulse at t = 0 with axis angle
/// -v_c t0^2 / 2 and winding l, start (|0> + e^{i beta}|1>) / sqrt2.
/// Without `with_olch` the pulse is omitted (not optimal for t > 0).
ControlPlan plan_for_v(const LZParams& params, double beta,
                       double v_c = std::numeric_limits<double>::quiet_NaN(), int winding = 0,
                       bool with_olch = true);

/// Target omega: H_c = -(eps0 sz + delta sx) / 2 and, when `with_olch`, sx
/// pulses at n pi / omega_c for n = 1..cycles; span [0, measurement_time()].
ControlPlan plan_for_omega(const DriveParams& drive, double beta, int winding = 0,
                           bool with_olch = true);

}  // namespace lzm

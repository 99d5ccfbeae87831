#pragma once

// Exact numerical propagation of driven two-level systems, with
// instantaneous pulse events and co-propagation of parameter derivatives.

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "lzmetro/linalg.hpp"

namespace lzm {

using RealFn = std::function<double(double)>;

/// Instantaneous rotation exp(-i (l + 1/2) pi n.sigma) with
/// n = (cos axis_angle, sin axis_angle, 0), applied at `time`.
struct PulseEvent {
  double time = 0.0;
  double axis_angle = 0.0;
  int winding = 0;

  Mat2 unitary() const;
};

TwoLevelState apply_pulse(const TwoLevelState& state, const PulseEvent& pulse);

/// H(t) = (hx sx + hy sy + hz sz) / 2 plus time-ordered pulse events.
struct HamiltonianSchedule {
  RealFn hx = [](double) { return 0.0; };
  RealFn hy = [](double) { return 0.0; };
  RealFn hz = [](double) { return 0.0; };
  std::vector<PulseEvent> pulses;

  Mat2 matrix(double t) const { return Mat2::from_pauli_half(hx(t), hy(t), hz(t)); }

  /// Adds the smooth part of `other` term by term (pulses are not merged).
  HamiltonianSchedule plus(const HamiltonianSchedule& other) const;

  /// Throws std::invalid_argument unless pulse times are strictly increasing.
  void validate() const;
};

enum class Target { Delta, V, Omega };

std::string_view to_string(Target target);
/// Accepts "delta", "v", "omega" (case-insensitive). Throws ConfigError.
Target parse_target(std::string_view name);

/// Which parameter g is estimated and dH/dg as a function of time.
struct EstimationProblem {
  Target target = Target::Delta;
  double true_value = 0.0;
  std::function<Mat2(double)> dgH;
  /// Times where the eigenvalues of dH/dg cross (kinks of the spread).
  std::function<std::vector<double>(double, double)> crossings;
};

/// H = (v t / 2) sz + (delta / 2) sx
HamiltonianSchedule lz_schedule(double v, double delta);
/// H = ((eps0 + amp cos(omega t)) / 2) sz + (delta / 2) sx
HamiltonianSchedule periodic_schedule(double eps0, double amp, double omega, double delta);

/// Estimation of `target` in the single-sweep model (Delta or V).
EstimationProblem lz_problem(Target target, double v, double delta);
/// Estimation of `target` in the periodic model (Delta or Omega).
EstimationProblem periodic_problem(Target target, double amp, double omega, double delta);

/// mu_max(t) - mu_min(t) of dH/dg.
double generator_eigen_spread(const EstimationProblem& problem, double t);

struct PropagationOptions {
  double tol = 1e-10;
  /// Output times; empty means `grid_points` uniform times over the span.
  std::vector<double> times;
  std::size_t grid_points = 400;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<TwoLevelState> states;
  /// Present only for propagate_with_derivative.
  std::optional<std::vector<TwoLevelState>> derivative_states;

  double max_norm_drift = 0.0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;

  const TwoLevelState& final_state() const { return states.back(); }
  const TwoLevelState& final_derivative() const { return derivative_states->back(); }
};

/// Uniform grid of `points` times covering [t_start, t_end] inclusive.
std::vector<double> uniform_grid(double t_start, double t_end, std::size_t points);

/// Solves i d/dt |psi> = H(t) |psi> over [t_start, t_end].
///
/// Integration runs segment-by-segment between pulse events; each pulse
/// unitary is applied exactly at its time. A state sampled at a pulse time is
/// the post-pulse state. Throws std::invalid_argument for a bad span, tol or
/// pulse placement and NumericalError on step-size underflow.
Trajectory propagate(const HamiltonianSchedule& schedule, const TwoLevelState& psi0,
                     double t_start, double t_end, const PropagationOptions& options = {});

/// As `propagate`, co-integrating d|psi>/dg with
/// i d/dt |dpsi> = H |dpsi> + (dH/dg) |psi>, dpsi(t_start) = 0.
Trajectory propagate_with_derivative(const HamiltonianSchedule& schedule,
                                     const EstimationProblem& problem,
                                     const TwoLevelState& psi0, double t_start, double t_end,
                                     const PropagationOptions& options = {});

/// Propagator U(t_end, t_start) and its parameter derivative dU/dg.
struct PropagatorWithDerivative {
  Mat2 u;
  Mat2 du;
  std::size_t steps_accepted = 0;
};

PropagatorWithDerivative propagate_unitary_with_derivative(const HamiltonianSchedule& schedule,
                                                           const EstimationProblem& problem,
                                                           double t_start, double t_end,
                                                           double tol = 1e-10);

}  // namespace lzm

#pragma once

// Closed-form results for the single sweep and the periodically driven
// qubit: asymptotic amplitudes, Fisher informations, controlled QFIs and
// optimal measurement bases.

#include <limits>
#include <string_view>

#include "lzmetro/dynamics.hpp"
#include "lzmetro/fisher.hpp"
#include "lzmetro/linalg.hpp"

namespace lzm {

struct ValidityReport {
  double t0_ratio = 0.0;
  double t_end_ratio = 0.0;
  bool t0_ok = false;
  bool t_end_ok = false;
  bool ok() const { return t0_ok && t_end_ok; }
};

/// Single sweep from -t0 to t_end.
struct LZParams {
  double v = 1.0;
  double delta = 1.0;
  double t0 = 100.0;
  double t_end = 100.0;

  double gamma() const { return delta * delta / (4.0 * v); }
  /// max(delta / 2v, 1 / sqrt v)
  double tau() const;
  /// Both offsets should be at least 20 tau for the asymptotics to hold.
  ValidityReport validity() const;
};

/// H = ((eps0 + amp cos(omega t)) sz + delta sx) / 2 measured at
/// T = (cycles + frac) pi / omega_c.
struct DriveParams {
  double eps0 = 0.0;
  double amp = 1.0;
  double omega = 1.0;
  double delta = 0.1;
  int cycles = 60;
  double frac = 0.0;
  double omega_c = 1.0;

  double measurement_time() const;
  void validate() const;
};

struct Probabilities {
  double p0 = 0.0;
  double p1 = 0.0;
};

/// p1 = exp(-2 pi gamma), p0 = 1 - p1.
Probabilities lz_probabilities(const LZParams& params);

struct AsymptoticFinalState {
  cplx c0{};
  cplx c1{};
  /// arg c1 - arg c0 = v T^2 / 2 + gamma ln(v T^2) + arg Gamma(1 - i gamma) + pi / 4
  double rel_phase = 0.0;
  /// (v T^2 + pi) / 4 + (gamma / 2) ln(v T^2)
  double phi = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;

  TwoLevelState state() const { return {c0, c1}; }
};

/// Large-T state for the |1> start, global phase fixed so that c1 is real
/// and positive.
AsymptoticFinalState asymptotic_final_state(const LZParams& params);

/// Same state without the phase removal: the solution with c1(-t0) = 1
/// exactly, including the t0-dependent phases.
AsymptoticFinalState asymptotic_final_state_absolute(const LZParams& params);

/// Start cos(alpha/2)|0> + e^{i beta} sin(alpha/2)|1>, built by linearity from
/// the |1> solution and its conjugate partner (c1*, -c0*) for the |0> start.
AsymptoticFinalState asymptotic_final_state_superposition(const LZParams& params, double alpha,
                                                          double beta);

/// sigma_z-basis CFI at large T:
/// F_delta = 16 pi^2 gamma^2 / ((e^{2 pi gamma} - 1) delta^2),
/// F_v = 4 pi^2 gamma^2 / ((e^{2 pi gamma} - 1) v^2).
double cfi_closed_form(Target target, const LZParams& params);

/// Leading QFI: I_delta = (delta/v)^2 P0 P1 ln(v T^2)^2, I_v = P0 P1 T^4.
double qfi_leading(Target target, const LZParams& params);

/// Terms of the next-order large-T expansion of I_delta, from
/// QFI = 4 P0 P1 |d ln c0 - d ln c1|^2 on the asymptotic amplitudes.
struct DeltaQfiTerms {
  double leading = 0.0;  // (delta/v)^2 P0 P1 L^2, L = ln(v T^2)
  double cross = 0.0;    // -2 (delta/v)^2 P0 P1 theta1(gamma) L
  double constant = 0.0; // (delta/v)^2 (pi^2 P1 / P0 + P0 P1 theta1(gamma)^2)
  double total() const { return leading + cross + constant; }
};

DeltaQfiTerms qfi_delta_improved_terms(const LZParams& params);
double qfi_delta_improved(const LZParams& params);

/// Saturated QFI under the optimal control at time t of a sweep started at -T:
/// Delta: (t + T)^2; V: ((t^2 + sgn(t) T^2) / 2)^2 with sgn(0) = -1.
double qfi_controlled(Target target, double t, double T);

/// QFI for omega at the measurement time with the OCH, with or without the
/// pulses at n pi / omega_c.
double qfi_controlled_omega(const DriveParams& drive, bool with_olch);
/// Same at any time t in [0, measurement_time()].
double qfi_controlled_omega_at(const DriveParams& drive, double t, bool with_olch);

/// Accumulated phase int_{a}^{b} amp cos(omega t) dt and its omega-derivative.
double drive_phase(const DriveParams& drive, double a, double b);
double drive_phase_derivative(const DriveParams& drive, double a, double b);

/// Max QFI over initial states for omega in the rotating frame.
double rwa_max_qfi(double amp, double delta, double omega, double T);

enum class Scenario { NoControl, ControlledDelta, ControlledV, ControlledOmega };

std::string_view to_string(Scenario scenario);
/// "none", "delta", "v", "omega". Throws ConfigError("scenario").
Scenario parse_scenario(std::string_view name);

struct MeasurementQuery {
  Scenario scenario = Scenario::NoControl;
  /// Evaluation time; ignored for NoControl, which uses lz.t_end.
  double t = 0.0;
  LZParams lz;
  DriveParams drive;
  double beta = 0.0;
  /// Estimate used by the v-plan pulse; NaN means the true v.
  double v_c = std::numeric_limits<double>::quiet_NaN();
  int winding = 0;
  bool with_olch = true;
};

/// Closed-form optimal basis (|a> +- i e^{i phase}|b>) / sqrt2 for each
/// scenario; `plus` carries the + sign.
MeasurementBasis optimal_measurement_vectors(const MeasurementQuery& query);

}  // namespace lzm

#pragma once

// Fisher information from propagated pure states: QFI, projective CFI,
// SLD measurement bases, the control upper bound and max-QFI over inputs.

#include <array>
#include <optional>
#include <vector>

#include "lzmetro/dynamics.hpp"
#include "lzmetro/linalg.hpp"

namespace lzm {

/// Orthonormal pair defining a two-outcome projective measurement.
struct MeasurementBasis {
  TwoLevelState plus;
  TwoLevelState minus;

  static MeasurementBasis sigma_z() { return {TwoLevelState::excited(), TwoLevelState::ground()}; }
  static MeasurementBasis sigma_x() { return {TwoLevelState::plus_x(), TwoLevelState::minus_x()}; }
  /// (|a> + r|b>)/sqrt2, (|a> - r|b>)/sqrt2 for unit-modulus r.
  static MeasurementBasis equal_superposition(const TwoLevelState& a, const TwoLevelState& b,
                                              cplx ratio);
};

/// 4 (<dpsi|dpsi> - |<psi|dpsi>|^2)
double qfi_pure(const TwoLevelState& psi, const TwoLevelState& dpsi);

struct CfiResult {
  double value = 0.0;
  /// Some outcome has p -> 0 while its derivative does not vanish; `value`
  /// is then +inf.
  bool divergent = false;
};

/// sum over outcomes (d p)^2 / p with d p = 2 Re[<k|psi>^* <k|dpsi>].
/// Terms with p < 1e-12 and |d p| < 1e-9 contribute zero.
CfiResult cfi_projective(const TwoLevelState& psi, const TwoLevelState& dpsi,
                         const MeasurementBasis& basis);

struct SldResult {
  MeasurementBasis basis;
  /// Eigenvalues of L_g, ascending; `basis.plus` belongs to the larger one.
  std::array<double, 2> eigenvalues{};
  bool zero_information = false;
};

/// Eigenbasis of L_g = 2(|dpsi><psi| + |psi><dpsi|).
///
/// When the eigenvalue gap of L_g falls below 1e-12 * 4 |dpsi| (or dpsi = 0)
/// the basis is arbitrary and `zero_information` is set.
SldResult sld_basis(const TwoLevelState& psi, const TwoLevelState& dpsi);

/// [ int_{t_start}^{t} (mu_max - mu_min) dt' ]^2 at each time in `grid`
/// (grid sorted, inside [t_start, inf)).
std::vector<double> control_bound(const EstimationProblem& problem, double t_start,
                                  const std::vector<double>& grid);

/// (lambda_max - lambda_min)^2 of the local generator h_g = i U^dagger dU/dg
/// of the propagator over [t_start, t_end].
double max_qfi_over_initial_states(const HamiltonianSchedule& schedule,
                                   const EstimationProblem& problem, double t_start,
                                   double t_end, double tol = 1e-10);

/// QFI for the four cases (+v,|1>), (-v,|0>), (+v,|0>), (-v,|1>) of the
/// uncontrolled single sweep over [-t0, t_end].
struct SymmetryReport {
  std::array<double, 4> qfi{};
  double max_relative_deviation = 0.0;
};

SymmetryReport symmetry_check(Target target, double v, double delta, double t0, double t_end,
                              double tol = 1e-10);

/// Sampled QFI/CFI/probability curves along a trajectory.
struct FisherCurve {
  std::vector<double> times;
  std::vector<double> qfi;
  std::optional<std::vector<double>> cfi;
  std::vector<double> p0;
  std::vector<double> p1;
  std::optional<std::vector<double>> bound;
  /// Number of samples where the CFI was flagged divergent.
  std::size_t divergent_cfi = 0;
};

/// Builds the curve from a trajectory carrying derivative states. The CFI is
/// evaluated in `cfi_basis` when given; p0/p1 are sigma_z probabilities.
FisherCurve fisher_curve(const Trajectory& trajectory,
                         const std::optional<MeasurementBasis>& cfi_basis,
                         const std::optional<std::vector<double>>& bound = std::nullopt);

}  // namespace lzm

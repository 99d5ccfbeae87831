#include "lzmetro/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lzm {

namespace {

Mat2 outer(const TwoLevelState& a, const TwoLevelState& b) {
  return {{a.c0 * std::conj(b.c0), a.c0 * std::conj(b.c1), a.c1 * std::conj(b.c0),
           a.c1 * std::conj(b.c1)}};
}

}  // namespace

MeasurementBasis MeasurementBasis::equal_superposition(const TwoLevelState& a,
                                                       const TwoLevelState& b, cplx ratio) {
  return {M_SQRT1_2 * (a + ratio * b), M_SQRT1_2 * (a - ratio * b)};
}

double qfi_pure(const TwoLevelState& psi, const TwoLevelState& dpsi) {
  return 4.0 * (dpsi.norm_squared() - std::norm(inner(psi, dpsi)));
}

CfiResult cfi_projective(const TwoLevelState& psi, const TwoLevelState& dpsi,
                         const MeasurementBasis& basis) {
  CfiResult out;
  for (const TwoLevelState* k : {&basis.plus, &basis.minus}) {
    const cplx amp = inner(*k, psi);
    const double p = std::norm(amp);
    const double dp = 2.0 * std::real(std::conj(amp) * inner(*k, dpsi));
    if (p < 1e-12) {
      if (std::abs(dp) < 1e-9) continue;
      out.divergent = true;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
    out.value += dp * dp / p;
  }
  return out;
}

SldResult sld_basis(const TwoLevelState& psi, const TwoLevelState& dpsi) {
  const Mat2 l = 2.0 * (outer(dpsi, psi) + outer(psi, dpsi));
  const auto eig = hermitian_eigen(l);
  SldResult out;
  out.eigenvalues = eig.values;
  out.basis = {eig.vectors[1], eig.vectors[0]};
  const double dn = dpsi.norm();
  out.zero_information = dn == 0.0 || (eig.values[1] - eig.values[0]) <= 1e-12 * 4.0 * dn;
  return out;
}

std::vector<double> control_bound(const EstimationProblem& problem, double t_start,
                                  const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("control_bound: grid must be sorted");
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto spread = [&problem](double t) { return generator_eigen_spread(problem, t); };
  auto piece = [&](double a, double b) {
    double total = 0.0;
    double lo = a;
    auto cuts = problem.crossings ? problem.crossings(a, b) : std::vector<double>{};
    cuts.push_back(b);
    for (double c : cuts) {
      if (c > lo) total += GK::integrate(spread, lo, c, 15, 1e-13);
      lo = c;
    }
    return total;
  };

  std::vector<double> out;
  out.reserve(grid.size());
  double acc = 0.0;
  double prev = t_start;
  for (double t : grid) {
    if (t < t_start) throw std::invalid_argument("control_bound: grid starts before t_start");
    if (t > prev) acc += piece(prev, t);
    prev = std::max(prev, t);
    out.push_back(acc * acc);
  }
  return out;
}

double max_qfi_over_initial_states(const HamiltonianSchedule& schedule,
                                   const EstimationProblem& problem, double t_start,
                                   double t_end, double tol) {
  const auto prop = propagate_unitary_with_derivative(schedule, problem, t_start, t_end, tol);
  Mat2 h = kI * (prop.u.adjoint() * prop.du);
  // Symmetrize away the integration error before the eigen solve.
  h = cplx(0.5) * (h + h.adjoint());
  const auto eig = hermitian_eigen(h);
  const double spread = eig.values[1] - eig.values[0];
  return spread * spread;
}

SymmetryReport symmetry_check(Target target, double v, double delta, double t0, double t_end,
                              double tol) {
  struct Case {
    double v;
    TwoLevelState psi0;
  };
  const std::array<Case, 4> cases{{{v, TwoLevelState::ground()},
                                   {-v, TwoLevelState::excited()},
                                   {v, TwoLevelState::excited()},
                                   {-v, TwoLevelState::ground()}}};
  SymmetryReport report;
  PropagationOptions opts;
  opts.tol = tol;
  opts.times = {t_end};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const auto traj = propagate_with_derivative(lz_schedule(c.v, delta),
                                                lz_problem(target, c.v, delta), c.psi0, -t0,
                                                t_end, opts);
    report.qfi[i] = qfi_pure(traj.final_state(), traj.final_derivative());
  }
  const double ref = report.qfi[0];
  for (double q : report.qfi)
    report.max_relative_deviation =
        std::max(report.max_relative_deviation, std::abs(q - ref) / std::abs(ref));
  return report;
}

FisherCurve fisher_curve(const Trajectory& trajectory,
                         const std::optional<MeasurementBasis>& cfi_basis,
                         const std::optional<std::vector<double>>& bound) {
  if (!trajectory.derivative_states)
    throw std::invalid_argument("fisher_curve: trajectory has no derivative states");
  const auto& states = trajectory.states;
  const auto& derivs = *trajectory.derivative_states;
  FisherCurve curve;
  curve.times = trajectory.times;
  curve.qfi.reserve(states.size());
  if (cfi_basis) curve.cfi.emplace();
  for (std::size_t i = 0; i < states.size(); ++i) {
    curve.qfi.push_back(qfi_pure(states[i], derivs[i]));
    curve.p0.push_back(states[i].p0());
    curve.p1.push_back(states[i].p1());
    if (cfi_basis) {
      const auto c = cfi_projective(states[i], derivs[i], *cfi_basis);
      if (c.divergent) ++curve.divergent_cfi;
      curve.cfi->push_back(c.value);
    }
  }
  if (bound) {
    if (bound->size() != states.size())
      throw std::invalid_argument("fisher_curve: bound length does not match trajectory");
    curve.bound = bound;
  }
  return curve;
}

}  // namespace lzm

#include "lzmetro/control.hpp"

#include <cmath>

namespace lzm {

namespace {

// Bloch vector of a normalized state.
std::array<double, 3> bloch(const TwoLevelState& s) {
  const cplx x = std::conj(s.c0) * s.c1;
  return {2.0 * x.real(), 2.0 * x.imag(), s.p0() - s.p1()};
}

double or_default(double x, double fallback) { return std::isnan(x) ? fallback : x; }

}  // namespace

HamiltonianSchedule generic_och(const std::array<TwoLevelState, 2>& eigenbasis,
                                const std::array<RealFn, 2>& f,
                                const HamiltonianSchedule& model) {
  // f_0 P_0 + f_1 P_1 = (f_0 + f_1) / 2 + (f_0 - f_1) r.sigma / 2 with r the
  // Bloch vector of eigenbasis[0].
  const auto r = bloch(eigenbasis[0].normalized());
  auto coef = [r, f](int axis, const RealFn& h) -> RealFn {
    return [=](double t) { return (f[0](t) - f[1](t)) * r[axis] - h(t); };
  };
  HamiltonianSchedule out;
  out.hx = coef(0, model.hx);
  out.hy = coef(1, model.hy);
  out.hz = coef(2, model.hz);
  return out;
}

ControlPlan plan_for_delta(const LZParams& params, double beta, double v_c) {
  ControlPlan plan;
  plan.estimates.v_c = or_default(v_c, params.v);
  plan.estimates.delta_c = params.delta;
  const double dc = plan.estimates.delta_c;
  plan.control = generic_och({TwoLevelState::plus_x(), TwoLevelState::minus_x()},
                             {[dc](double) { return dc / 2.0; }, [dc](double) { return -dc / 2.0; }},
                             lz_schedule(plan.estimates.v_c, dc));
  // The sx part of f cancels the model's; only -v_c t sz / 2 remains.
  plan.control.hx = [](double) { return 0.0; };
  plan.schedule = lz_schedule(params.v, params.delta).plus(plan.control);
  plan.initial_state = M_SQRT1_2 * (TwoLevelState::plus_x() +
                                    std::polar(1.0, beta) * TwoLevelState::minus_x());
  plan.problem = lz_problem(Target::Delta, params.v, params.delta);
  plan.beta = beta;
  plan.t_start = -params.t0;
  plan.t_end = params.t_end;
  return plan;
}

ControlPlan plan_for_v(const LZParams& params, double beta, double v_c, int winding,
                       bool with_olch) {
  ControlPlan plan;
  plan.estimates.v_c = or_default(v_c, params.v);
  plan.estimates.delta_c = params.delta;
  const double vc = plan.estimates.v_c;
  plan.control =
      generic_och({TwoLevelState::excited(), TwoLevelState::ground()},
                  {[vc](double t) { return vc * t / 2.0; }, [vc](double t) { return -vc * t / 2.0; }},
                  lz_schedule(vc, plan.estimates.delta_c));
  plan.control.hz = [](double) { return 0.0; };
  plan.schedule = lz_schedule(params.v, params.delta).plus(plan.control);
  if (with_olch) plan.schedule.pulses.push_back({0.0, -vc * params.t0 * params.t0 / 2.0, winding});
  plan.initial_state = M_SQRT1_2 * (TwoLevelState::excited() +
                                    std::polar(1.0, beta) * TwoLevelState::ground());
  plan.problem = lz_problem(Target::V, params.v, params.delta);
  plan.beta = beta;
  plan.winding = winding;
  plan.t_start = -params.t0;
  plan.t_end = params.t_end;
  return plan;
}

ControlPlan plan_for_omega(const DriveParams& drive, double beta, int winding, bool with_olch) {
  drive.validate();
  ControlPlan plan;
  plan.estimates.omega_c = drive.omega_c;
  plan.estimates.delta_c = drive.delta;
  const double amp = drive.amp;
  const double wc = drive.omega_c;
  auto model = periodic_schedule(drive.eps0, amp, wc, drive.delta);
  plan.control = generic_och(
      {TwoLevelState::excited(), TwoLevelState::ground()},
      {[amp, wc](double t) { return amp * std::cos(wc * t) / 2.0; },
       [amp, wc](double t) { return -amp * std::cos(wc * t) / 2.0; }},
      model);
  // The drive terms cancel identically; keep H_c free of omega_c.
  const double eps0 = drive.eps0;
  plan.control.hz = [eps0](double) { return -eps0; };
  plan.schedule = periodic_schedule(drive.eps0, amp, drive.omega, drive.delta).plus(plan.control);
  if (with_olch) {
    for (int n = 1; n <= drive.cycles; ++n)
      plan.schedule.pulses.push_back({n * kPi / wc, 0.0, winding});
  }
  plan.initial_state = M_SQRT1_2 * (TwoLevelState::excited() +
                                    std::polar(1.0, beta) * TwoLevelState::ground());
  plan.problem = periodic_problem(Target::Omega, amp, drive.omega, drive.delta);
  plan.beta = beta;
  plan.winding = winding;
  plan.t_start = 0.0;
  plan.t_end = drive.measurement_time();
  return plan;
}

}  // namespace lzm

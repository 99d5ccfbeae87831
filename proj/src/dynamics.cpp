#include "lzmetro/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lzmetro/errors.hpp"
#include "lzmetro/ode.hpp"

namespace lzm {

Mat2 PulseEvent::unitary() const {
  // cos((l+1/2)pi) = 0 and sin((l+1/2)pi) = (-1)^l.
  const double sign = (winding % 2 == 0) ? 1.0 : -1.0;
  const cplx f = -kI * sign;
  const cplx e_minus = std::polar(1.0, -axis_angle);
  const cplx e_plus = std::polar(1.0, axis_angle);
  return {{0.0, f * e_minus, f * e_plus, 0.0}};
}

TwoLevelState apply_pulse(const TwoLevelState& state, const PulseEvent& pulse) {
  return pulse.unitary() * state;
}

HamiltonianSchedule HamiltonianSchedule::plus(const HamiltonianSchedule& other) const {
  HamiltonianSchedule out;
  out.hx = [a = hx, b = other.hx](double t) { return a(t) + b(t); };
  out.hy = [a = hy, b = other.hy](double t) { return a(t) + b(t); };
  out.hz = [a = hz, b = other.hz](double t) { return a(t) + b(t); };
  out.pulses = pulses;
  return out;
}

void HamiltonianSchedule::validate() const {
  for (std::size_t i = 1; i < pulses.size(); ++i) {
    if (!(pulses[i].time > pulses[i - 1].time))
      throw std::invalid_argument("pulse times must be strictly increasing");
  }
}

std::string_view to_string(Target target) {
  switch (target) {
    case Target::Delta: return "delta";
    case Target::V: return "v";
    case Target::Omega: return "omega";
  }
  return "?";
}

Target parse_target(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "delta") return Target::Delta;
  if (lower == "v") return Target::V;
  if (lower == "omega") return Target::Omega;
  throw ConfigError("target", "unknown target '" + std::string(name) + "' (delta|v|omega)");
}

HamiltonianSchedule lz_schedule(double v, double delta) {
  HamiltonianSchedule s;
  s.hx = [delta](double) { return delta; };
  s.hz = [v](double t) { return v * t; };
  return s;
}

HamiltonianSchedule periodic_schedule(double eps0, double amp, double omega, double delta) {
  HamiltonianSchedule s;
  s.hx = [delta](double) { return delta; };
  s.hz = [eps0, amp, omega](double t) { return eps0 + amp * std::cos(omega * t); };
  return s;
}

namespace {

std::vector<double> no_crossings(double, double) { return {}; }

}  // namespace

EstimationProblem lz_problem(Target target, double v, double delta) {
  EstimationProblem p;
  p.target = target;
  switch (target) {
    case Target::Delta:
      p.true_value = delta;
      p.dgH = [](double) { return Mat2::from_pauli_half(1.0, 0.0, 0.0); };
      p.crossings = no_crossings;
      break;
    case Target::V:
      p.true_value = v;
      p.dgH = [](double t) { return Mat2::from_pauli_half(0.0, 0.0, t); };
      p.crossings = [](double a, double b) {
        return (a < 0.0 && b > 0.0) ? std::vector<double>{0.0} : std::vector<double>{};
      };
      break;
    case Target::Omega:
      throw ConfigError("target", "omega is not a parameter of the single-sweep model");
  }
  return p;
}

EstimationProblem periodic_problem(Target target, double amp, double omega, double delta) {
  EstimationProblem p;
  p.target = target;
  switch (target) {
    case Target::Delta:
      p.true_value = delta;
      p.dgH = [](double) { return Mat2::from_pauli_half(1.0, 0.0, 0.0); };
      p.crossings = no_crossings;
      break;
    case Target::Omega:
      p.true_value = omega;
      p.dgH = [amp, omega](double t) {
        return Mat2::from_pauli_half(0.0, 0.0, -amp * t * std::sin(omega * t));
      };
      // Zeros of t sin(omega t): multiples of pi / omega.
      p.crossings = [omega](double a, double b) {
        std::vector<double> out;
        const double period = kPi / std::abs(omega);
        for (double n = std::floor(a / period) + 1; n * period < b; n += 1.0)
          if (n * period > a) out.push_back(n * period);
        return out;
      };
      break;
    case Target::V:
      throw ConfigError("target", "v is not a parameter of the periodic model");
  }
  return p;
}

double generator_eigen_spread(const EstimationProblem& problem, double t) {
  const auto eig = hermitian_eigen(problem.dgH(t));
  return eig.values[1] - eig.values[0];
}

std::vector<double> uniform_grid(double t_start, double t_end, std::size_t points) {
  if (points < 2) return {t_end};
  std::vector<double> out(points);
  const double step = (t_end - t_start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = t_start + step * static_cast<double>(i);
  out.back() = t_end;
  return out;
}

namespace {

void check_span(const HamiltonianSchedule& schedule, double t_start, double t_end, double tol) {
  if (!(t_start < t_end) || !std::isfinite(t_start) || !std::isfinite(t_end))
    throw std::invalid_argument("span must satisfy t_start < t_end");
  if (!(tol >= 1e-13 && tol <= 1e-6)) throw std::invalid_argument("tol must lie in [1e-13, 1e-6]");
  schedule.validate();
  for (const auto& p : schedule.pulses) {
    if (p.time < t_start || p.time > t_end) {
      std::ostringstream msg;
      msg << "pulse at t=" << p.time << " lies outside the span [" << t_start << ", " << t_end
          << "]";
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<double> output_times(double t_start, double t_end, const PropagationOptions& opt) {
  if (opt.times.empty()) return uniform_grid(t_start, t_end, std::max<std::size_t>(opt.grid_points, 2));
  std::vector<double> times = opt.times;
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("output times must be sorted");
  if (times.front() < t_start || times.back() > t_end)
    throw std::invalid_argument("output times must lie inside the span");
  return times;
}

// Integrates an N-component linear system through the schedule's pulses.
// `kick` applies a pulse to the full vector; `sample(i, y)` stores output i.
template <std::size_t N, class Rhs, class Kick, class Sample>
ode::Vec<N> run_segments(const HamiltonianSchedule& schedule, ode::Vec<N> y, double t_start,
                         double t_end, double tol, const std::vector<double>& times, Rhs&& rhs,
                         Kick&& kick, Sample&& sample, ode::StepStats& stats) {
  std::size_t next = 0;
  auto emit_at = [&](double t) {
    while (next < times.size() && times[next] == t) sample(next++, y);
  };

  double seg_start = t_start;
  std::size_t pulse_idx = 0;
  // Pulses at the very start act on the initial state.
  while (pulse_idx < schedule.pulses.size() && schedule.pulses[pulse_idx].time == t_start)
    kick(y, schedule.pulses[pulse_idx++]);
  emit_at(t_start);

  while (seg_start < t_end) {
    const bool ends_on_pulse = pulse_idx < schedule.pulses.size();
    const double seg_end = ends_on_pulse ? schedule.pulses[pulse_idx].time : t_end;

    // Samples strictly inside the segment, plus its end when no pulse sits there.
    std::size_t last = next;
    while (last < times.size() &&
           (times[last] < seg_end || (!ends_on_pulse && times[last] == seg_end)))
      ++last;
    std::span<const double> seg_times(times.data() + next, last - next);
    const std::size_t offset = next;
    if (seg_end > seg_start) {
      y = ode::integrate<N>(
          rhs, y, seg_start, seg_end, tol, seg_times,
          [&](std::size_t i, const ode::Vec<N>& ys) { sample(offset + i, ys); }, stats,
          t_end - t_start, stats.last_step);
    }
    next = last;
    if (ends_on_pulse) {
      kick(y, schedule.pulses[pulse_idx++]);
      emit_at(seg_end);
    }
    seg_start = seg_end;
  }
  return y;
}

}  // namespace

Trajectory propagate(const HamiltonianSchedule& schedule, const TwoLevelState& psi0,
                     double t_start, double t_end, const PropagationOptions& options) {
  check_span(schedule, t_start, t_end, options.tol);
  Trajectory traj;
  traj.times = output_times(t_start, t_end, options);
  traj.states.resize(traj.times.size());

  auto rhs = [&](double t, const ode::Vec<2>& y, ode::Vec<2>& dy) {
    const TwoLevelState s = schedule.matrix(t) * TwoLevelState{y[0], y[1]};
    dy = {-kI * s.c0, -kI * s.c1};
  };
  auto kick = [](ode::Vec<2>& y, const PulseEvent& p) {
    const TwoLevelState s = apply_pulse({y[0], y[1]}, p);
    y = {s.c0, s.c1};
  };
  auto sample = [&](std::size_t i, const ode::Vec<2>& y) {
    traj.states[i] = {y[0], y[1]};
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(traj.states[i].norm() - 1.0));
  };
  ode::StepStats stats;
  run_segments<2>(schedule, ode::Vec<2>{psi0.c0, psi0.c1}, t_start, t_end, options.tol,
                  traj.times, rhs, kick, sample, stats);
  traj.steps_accepted = stats.accepted;
  traj.steps_rejected = stats.rejected;
  return traj;
}

Trajectory propagate_with_derivative(const HamiltonianSchedule& schedule,
                                     const EstimationProblem& problem,
                                     const TwoLevelState& psi0, double t_start, double t_end,
                                     const PropagationOptions& options) {
  check_span(schedule, t_start, t_end, options.tol);
  Trajectory traj;
  traj.times = output_times(t_start, t_end, options);
  traj.states.resize(traj.times.size());
  traj.derivative_states.emplace(traj.times.size());

  auto rhs = [&](double t, const ode::Vec<4>& y, ode::Vec<4>& dy) {
    const Mat2 h = schedule.matrix(t);
    const TwoLevelState psi{y[0], y[1]};
    const TwoLevelState s = h * psi;
    const TwoLevelState d = h * TwoLevelState{y[2], y[3]} + problem.dgH(t) * psi;
    dy = {-kI * s.c0, -kI * s.c1, -kI * d.c0, -kI * d.c1};
  };
  auto kick = [](ode::Vec<4>& y, const PulseEvent& p) {
    const Mat2 u = p.unitary();
    const TwoLevelState s = u * TwoLevelState{y[0], y[1]};
    const TwoLevelState d = u * TwoLevelState{y[2], y[3]};
    y = {s.c0, s.c1, d.c0, d.c1};
  };
  auto sample = [&](std::size_t i, const ode::Vec<4>& y) {
    traj.states[i] = {y[0], y[1]};
    (*traj.derivative_states)[i] = {y[2], y[3]};
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(traj.states[i].norm() - 1.0));
  };
  ode::StepStats stats;
  run_segments<4>(schedule, ode::Vec<4>{psi0.c0, psi0.c1, 0.0, 0.0}, t_start, t_end,
                  options.tol, traj.times, rhs, kick, sample, stats);
  traj.steps_accepted = stats.accepted;
  traj.steps_rejected = stats.rejected;
  return traj;
}

PropagatorWithDerivative propagate_unitary_with_derivative(const HamiltonianSchedule& schedule,
                                                           const EstimationProblem& problem,
                                                           double t_start, double t_end,
                                                           double tol) {
  check_span(schedule, t_start, t_end, tol);
  // Layout: U row-major (4), then dU row-major (4).
  auto unpack = [](const ode::Vec<8>& y, std::size_t off) {
    return Mat2{{y[off], y[off + 1], y[off + 2], y[off + 3]}};
  };
  auto pack = [](ode::Vec<8>& y, const Mat2& a, const Mat2& b) {
    for (std::size_t k = 0; k < 4; ++k) {
      y[k] = a.m[k];
      y[4 + k] = b.m[k];
    }
  };
  auto rhs = [&](double t, const ode::Vec<8>& y, ode::Vec<8>& dy) {
    const Mat2 h = schedule.matrix(t);
    const Mat2 u = unpack(y, 0);
    const Mat2 du = unpack(y, 4);
    pack(dy, -kI * (h * u), -kI * (h * du + problem.dgH(t) * u));
  };
  auto kick = [&](ode::Vec<8>& y, const PulseEvent& p) {
    const Mat2 w = p.unitary();
    pack(y, w * unpack(y, 0), w * unpack(y, 4));
  };
  ode::Vec<8> y0{};
  pack(y0, Mat2::identity(), Mat2::zero());
  ode::StepStats stats;
  const std::vector<double> no_times;
  const ode::Vec<8> y = run_segments<8>(schedule, y0, t_start, t_end, tol, no_times, rhs, kick,
                                        [](std::size_t, const ode::Vec<8>&) {}, stats);
  return {unpack(y, 0), unpack(y, 4), stats.accepted};
}

}  // namespace lzm

#include "lzmetro/analytic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lzmetro/errors.hpp"
#include "lzmetro/specfun.hpp"

namespace lzm {

namespace {

double sweep_phase(double v, double gamma, double T) {
  const double r2 = v * T * T;
  return (r2 + kPi) / 4.0 + 0.5 * gamma * std::log(r2);
}

// arg c1 - arg c0 wrapped to (-pi, pi].
double relative_phase(cplx c0, cplx c1) { return std::arg(c1 * std::conj(c0)); }

AsymptoticFinalState finish(cplx c0, cplx c1, double phi) {
  AsymptoticFinalState s;
  s.c0 = c0;
  s.c1 = c1;
  s.phi = phi;
  s.p0 = std::norm(c0);
  s.p1 = std::norm(c1);
  return s;
}

}  // namespace

double LZParams::tau() const { return std::max(delta / (2.0 * v), 1.0 / std::sqrt(v)); }

ValidityReport LZParams::validity() const {
  ValidityReport r;
  const double ta = tau();
  r.t0_ratio = t0 / ta;
  r.t_end_ratio = t_end / ta;
  r.t0_ok = r.t0_ratio >= 20.0;
  r.t_end_ok = r.t_end_ratio >= 20.0;
  return r;
}

double DriveParams::measurement_time() const {
  return (static_cast<double>(cycles) + frac) * kPi / omega_c;
}

void DriveParams::validate() const {
  if (!(amp > 0.0) || !std::isfinite(amp)) throw ConfigError("amp", "amp must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("omega", "omega must be positive");
  if (!(omega_c > 0.0) || !std::isfinite(omega_c))
    throw ConfigError("omega_c", "omega_c must be positive");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta", "delta must be >= 0");
  if (!std::isfinite(eps0)) throw ConfigError("eps0", "eps0 must be finite");
  if (cycles < 1) throw ConfigError("cycles", "cycles must be >= 1");
  if (!(frac >= 0.0 && frac < 1.0)) throw ConfigError("frac", "frac must lie in [0, 1)");
}

Probabilities lz_probabilities(const LZParams& params) {
  const double x = -2.0 * kPi * params.gamma();
  return {-std::expm1(x), std::exp(x)};
}

AsymptoticFinalState asymptotic_final_state(const LZParams& params) {
  const double g = params.gamma();
  const auto probs = lz_probabilities(params);
  const double phi = sweep_phase(params.v, g, params.t_end);
  const double arg_gamma = specfun::log_gamma_complex({1.0, -g}).argument;
  const double rel = params.v * params.t_end * params.t_end / 2.0 +
                     g * std::log(params.v * params.t_end * params.t_end) + arg_gamma + kPi / 4.0;
  // c0 = e^{-pi g/2} sqrt(2 pi g) / Gamma(1 - i g) e^{-i(2 phi - pi/4)}; its
  // modulus is sqrt(p0) by the reflection identity.
  const cplx c0 = std::polar(std::sqrt(probs.p0), -arg_gamma - (2.0 * phi - kPi / 4.0));
  auto s = finish(c0, std::sqrt(probs.p1), phi);
  s.rel_phase = rel;
  return s;
}

AsymptoticFinalState asymptotic_final_state_absolute(const LZParams& params) {
  const double g = params.gamma();
  const auto probs = lz_probabilities(params);
  const double phi = sweep_phase(params.v, g, params.t_end);
  const double phi0 = sweep_phase(params.v, g, params.t0);
  const double arg_gamma = specfun::log_gamma_complex({1.0, -g}).argument;
  const cplx c0 = std::polar(std::sqrt(probs.p0), -arg_gamma - (phi + phi0 - kPi / 4.0));
  const cplx c1 = std::polar(std::sqrt(probs.p1), phi - phi0);
  auto s = finish(c0, c1, phi);
  s.rel_phase = asymptotic_final_state(params).rel_phase;
  return s;
}

AsymptoticFinalState asymptotic_final_state_superposition(const LZParams& params, double alpha,
                                                          double beta) {
  const auto one = asymptotic_final_state_absolute(params);
  const double a = std::cos(alpha / 2.0);
  const cplx b = std::polar(std::sin(alpha / 2.0), beta);
  // |0> start: (c1*, -c0*) of the |1> start solution.
  const cplx c0 = a * std::conj(one.c1) + b * one.c0;
  const cplx c1 = -a * std::conj(one.c0) + b * one.c1;
  auto s = finish(c0, c1, one.phi);
  s.rel_phase = relative_phase(c0, c1);
  return s;
}

double cfi_closed_form(Target target, const LZParams& params) {
  const double g = params.gamma();
  const double v = params.v;
  switch (target) {
    case Target::Delta:
      // 16 pi^2 g^2 / ((e^{2 pi g} - 1) delta^2) = pi^2 delta^2 / (v^2 (e^{2 pi g} - 1))
      if (g == 0.0) return 2.0 * kPi / v;
      return kPi * kPi * params.delta * params.delta / (v * v * std::expm1(2.0 * kPi * g));
    case Target::V:
      if (g == 0.0) return 0.0;
      return 4.0 * kPi * kPi * g * g / (std::expm1(2.0 * kPi * g) * v * v);
    case Target::Omega:
      break;
  }
  throw std::invalid_argument("cfi_closed_form: omega is not a single-sweep parameter");
}

double qfi_leading(Target target, const LZParams& params) {
  const auto p = lz_probabilities(params);
  const double T = params.t_end;
  switch (target) {
    case Target::Delta: {
      const double l = std::log(params.v * T * T);
      const double r = params.delta / params.v;
      return r * r * p.p0 * p.p1 * l * l;
    }
    case Target::V:
      return p.p0 * p.p1 * T * T * T * T;
    case Target::Omega:
      break;
  }
  throw std::invalid_argument("qfi_leading: omega is not a single-sweep parameter");
}

DeltaQfiTerms qfi_delta_improved_terms(const LZParams& params) {
  const auto p = lz_probabilities(params);
  const double l = std::log(params.v * params.t_end * params.t_end);
  const double r2 = params.delta * params.delta / (params.v * params.v);
  DeltaQfiTerms terms;
  terms.leading = r2 * p.p0 * p.p1 * l * l;
  if (p.p0 == 0.0) return terms;
  const double th = specfun::theta1(params.gamma());
  terms.cross = -2.0 * r2 * p.p0 * p.p1 * th * l;
  terms.constant = r2 * (kPi * kPi * p.p1 / p.p0 + p.p0 * p.p1 * th * th);
  return terms;
}

double qfi_delta_improved(const LZParams& params) {
  return qfi_delta_improved_terms(params).total();
}

double qfi_controlled(Target target, double t, double T) {
  switch (target) {
    case Target::Delta:
      return (t + T) * (t + T);
    case Target::V: {
      const double sgn = t > 0.0 ? 1.0 : -1.0;
      const double x = (t * t + sgn * T * T) / 2.0;
      return x * x;
    }
    case Target::Omega:
      break;
  }
  throw std::invalid_argument("qfi_controlled: use qfi_controlled_omega for omega");
}

double drive_phase(const DriveParams& d, double a, double b) {
  return d.amp / d.omega * (std::sin(d.omega * b) - std::sin(d.omega * a));
}

double drive_phase_derivative(const DriveParams& d, double a, double b) {
  const double w = d.omega;
  return -drive_phase(d, a, b) / w + d.amp / w * (b * std::cos(w * b) - a * std::cos(w * a));
}

namespace {

// Pulses at n pi / omega_c (n = 1..cycles) that have fired by time t, using
// the same arithmetic as the plan's pulse times.
int pulses_fired(const DriveParams& d, double t) {
  int k = 0;
  while (k < d.cycles && (k + 1) * kPi / d.omega_c <= t) ++k;
  return k;
}

}  // namespace

double qfi_controlled_omega_at(const DriveParams& d, double t, bool with_olch) {
  d.validate();
  if (!with_olch) {
    const double s = drive_phase_derivative(d, 0.0, t);
    return s * s;
  }
  // Each pulse swaps |0> and |1>, reversing the sign of all earlier phase.
  const int k = pulses_fired(d, t);
  double sum = 0.0;
  for (int n = 0; n < k; ++n)
    sum += (n % 2 == 0 ? 1.0 : -1.0) *
           drive_phase_derivative(d, n * kPi / d.omega_c, (n + 1) * kPi / d.omega_c);
  sum += (k % 2 == 0 ? 1.0 : -1.0) * drive_phase_derivative(d, k * kPi / d.omega_c, t);
  return sum * sum;
}

double qfi_controlled_omega(const DriveParams& d, bool with_olch) {
  return qfi_controlled_omega_at(d, d.measurement_time(), with_olch);
}

double rwa_max_qfi(double amp, double delta, double omega, double T) {
  const double a2 = amp * amp;
  const double w2 = a2 + 4.0 * (delta - omega) * (delta - omega);
  const double w = std::sqrt(w2);
  return a2 * T * T / w2 - 4.0 * a2 * T * std::sin(T * w / 2.0) / (w2 * w) +
         8.0 * a2 * (1.0 - std::cos(T * w / 2.0)) / (w2 * w2);
}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::NoControl:
      return "none";
    case Scenario::ControlledDelta:
      return "delta";
    case Scenario::ControlledV:
      return "v";
    case Scenario::ControlledOmega:
      return "omega";
  }
  return "?";
}

Scenario parse_scenario(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "none") return Scenario::NoControl;
  if (lower == "delta") return Scenario::ControlledDelta;
  if (lower == "v") return Scenario::ControlledV;
  if (lower == "omega") return Scenario::ControlledOmega;
  throw ConfigError("scenario",
                    "unknown scenario '" + std::string(name) + "' (none|delta|v|omega)");
}

MeasurementBasis optimal_measurement_vectors(const MeasurementQuery& q) {
  const auto z0 = TwoLevelState::excited();
  const auto z1 = TwoLevelState::ground();
  double phase = 0.0;
  switch (q.scenario) {
    case Scenario::NoControl:
      return MeasurementBasis::equal_superposition(
          z0, z1, kI * std::polar(1.0, asymptotic_final_state(q.lz).rel_phase));
    case Scenario::ControlledDelta:
      phase = q.lz.delta * (q.t + q.lz.t0) + q.beta;
      return MeasurementBasis::equal_superposition(TwoLevelState::plus_x(),
                                                   TwoLevelState::minus_x(),
                                                   kI * std::polar(1.0, phase));
    case Scenario::ControlledV: {
      const double v = q.lz.v;
      const double vc = std::isnan(q.v_c) ? v : q.v_c;
      const double T2 = q.lz.t0 * q.lz.t0;
      const double t2 = q.t * q.t;
      // Before the pulse at 0 the phase grows from beta; the pulse reflects it
      // and adds twice its axis angle -v_c T^2 / 2.
      const bool before = q.t < 0.0 || !q.with_olch;
      phase = before ? v * (t2 - T2) / 2.0 + q.beta : v * (t2 + T2) / 2.0 - q.beta - vc * T2;
      break;
    }
    case Scenario::ControlledOmega: {
      const auto& d = q.drive;
      if (q.with_olch) {
        const int k = pulses_fired(d, q.t);
        double sum = q.beta;
        for (int n = 0; n < k; ++n)
          sum += (n % 2 == 0 ? 1.0 : -1.0) *
                 drive_phase(d, n * kPi / d.omega_c, (n + 1) * kPi / d.omega_c);
        phase = (k % 2 == 0 ? 1.0 : -1.0) * sum + drive_phase(d, k * kPi / d.omega_c, q.t);
      } else {
        phase = q.beta + drive_phase(d, 0.0, q.t);
      }
      break;
    }
  }
  return MeasurementBasis::equal_superposition(z0, z1, kI * std::polar(1.0, phase));
}

}  // namespace lzm

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lzmetro/analytic.hpp"
#include "lzmetro/cli.hpp"
#include "lzmetro/control.hpp"
#include "lzmetro/errors.hpp"
#include "lzmetro/fisher.hpp"
#include "lzmetro/specfun.hpp"

namespace lzm::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";
const double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_controlled(const std::string& command) {
  return command == "single-controlled" || command == "periodic-controlled";
}

bool is_single(const std::string& command) {
  return command == "single" || command == "single-controlled";
}

LZParams lz_params(const RunConfig& c) { return {c.v, c.delta, c.t0, c.t}; }

DriveParams drive_params(const RunConfig& c) {
  DriveParams d;
  d.eps0 = c.eps0;
  d.amp = c.amp;
  d.omega = c.omega;
  d.delta = c.delta;
  d.cycles = c.cycles;
  d.frac = c.frac;
  d.omega_c = std::isnan(c.omega_c) ? c.omega : c.omega_c;
  return d;
}

TwoLevelState start_state(double alpha, double beta0) {
  return {std::cos(alpha / 2.0), std::polar(std::sin(alpha / 2.0), beta0)};
}

// Everything needed to run and tabulate one scenario.
struct Setup {
  HamiltonianSchedule schedule;
  EstimationProblem problem;
  TwoLevelState psi0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::function<double(double)> overlay;
  /// Large-T sigma_z CFI (constant in t), for the uncontrolled |1> start.
  std::optional<double> cfi_closed;
  std::function<MeasurementQuery(double)> query;
  std::vector<std::string> warnings;
};

Setup make_setup(const RunConfig& c) {
  Setup s;
  const Target target = parse_target(c.target);
  if (is_single(c.command)) {
    const LZParams p = lz_params(c);
    s.t_start = -p.t0;
    s.t_end = p.t_end;
    const auto validity = p.validity();
    if (!validity.t0_ok) {
      std::ostringstream msg;
      msg << "t0/tau = " << validity.t0_ratio << " < 20: asymptotic formulas not trusted";
      s.warnings.push_back(msg.str());
    }
    if (c.command == "single") {
      s.schedule = lz_schedule(p.v, p.delta);
      s.problem = lz_problem(target, p.v, p.delta);
      s.psi0 = start_state(c.alpha, c.beta0);
      // The large-T closed forms describe the |1> start only.
      if (std::abs(c.alpha - kPi) < 1e-12) {
        s.overlay = [p, target](double t) {
          LZParams q = p;
          q.t_end = t;
          if (!q.validity().t_end_ok) return kNaN;
          return target == Target::Delta ? qfi_delta_improved(q) : qfi_leading(Target::V, q);
        };
        s.cfi_closed = cfi_closed_form(target, p);
      }
      return s;
    }
    const ControlPlan plan = target == Target::Delta
                                 ? plan_for_delta(p, c.beta, c.v_c)
                                 : plan_for_v(p, c.beta, c.v_c, c.l, c.olch);
    s.schedule = plan.schedule;
    s.problem = plan.problem;
    s.psi0 = plan.initial_state;
    const bool exact = target == Target::Delta ? plan.estimates.v_c == p.v : c.olch;
    if (exact) {
      const double T = p.t0;
      s.overlay = [target, T](double t) { return qfi_controlled(target, t, T); };
    }
    s.query = [p, c, target](double t) {
      MeasurementQuery q;
      q.scenario = target == Target::Delta ? Scenario::ControlledDelta : Scenario::ControlledV;
      q.t = t;
      q.lz = p;
      q.beta = c.beta;
      q.v_c = c.v_c;
      q.winding = c.l;
      q.with_olch = c.olch;
      return q;
    };
    return s;
  }

  const DriveParams d = drive_params(c);
  d.validate();
  s.t_start = 0.0;
  s.t_end = d.measurement_time();
  if (c.command == "periodic") {
    s.schedule = periodic_schedule(d.eps0, d.amp, d.omega, d.delta);
    s.problem = periodic_problem(target, d.amp, d.omega, d.delta);
    s.psi0 = start_state(c.alpha, c.beta0);
    return s;
  }
  const ControlPlan plan = plan_for_omega(d, c.beta, c.l, c.olch);
  s.schedule = plan.schedule;
  s.problem = plan.problem;
  s.psi0 = plan.initial_state;
  const bool olch = c.olch;
  s.overlay = [d, olch](double t) { return qfi_controlled_omega_at(d, t, olch); };
  s.query = [d, c](double t) {
    MeasurementQuery q;
    q.scenario = Scenario::ControlledOmega;
    q.t = t;
    q.drive = d;
    q.beta = c.beta;
    q.winding = c.l;
    q.with_olch = c.olch;
    return q;
  };
  return s;
}

// Named endpoint/time-series values before they are laid out as a table.
struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Diagnostics diagnostics;
};

Series evaluate(const RunConfig& c, const std::vector<double>& explicit_times) {
  Setup s = make_setup(c);
  PropagationOptions opts;
  opts.tol = c.tol;
  opts.grid_points = static_cast<std::size_t>(c.grid);
  opts.times = explicit_times;
  const Trajectory traj =
      propagate_with_derivative(s.schedule, s.problem, s.psi0, s.t_start, s.t_end, opts);
  const auto bound = control_bound(s.problem, s.t_start, traj.times);

  const std::string basis = c.basis.empty() ? (is_controlled(c.command) ? "optimal" : "z") : c.basis;
  const bool with_cfi = basis != "none";

  Series out;
  out.columns = {"t", "qfi"};
  if (with_cfi) out.columns.push_back("cfi");
  out.columns.insert(out.columns.end(), {"p0", "p1", "bound"});
  if (s.overlay) out.columns.push_back("analytic_overlay");
  const bool with_cfi_closed = s.cfi_closed && basis == "z";
  if (with_cfi_closed) out.columns.push_back("cfi_closed_form");

  out.diagnostics.max_norm_drift = traj.max_norm_drift;
  out.diagnostics.steps_accepted = traj.steps_accepted;
  out.diagnostics.steps_rejected = traj.steps_rejected;
  out.diagnostics.warnings = s.warnings;

  const auto& derivs = *traj.derivative_states;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const auto& psi = traj.states[i];
    const auto& dpsi = derivs[i];
    std::vector<double> row{t, qfi_pure(psi, dpsi)};
    if (with_cfi) {
      MeasurementBasis b;
      if (basis == "z") b = MeasurementBasis::sigma_z();
      else if (basis == "x") b = MeasurementBasis::sigma_x();
      else if (basis == "sld") b = sld_basis(psi, dpsi).basis;
      else b = optimal_measurement_vectors(s.query(t));
      const auto cfi = cfi_projective(psi, dpsi, b);
      if (cfi.divergent) ++out.diagnostics.divergent_cfi;
      row.push_back(cfi.value);
    }
    row.insert(row.end(), {psi.p0(), psi.p1(), bound[i]});
    if (s.overlay) row.push_back(s.overlay(t));
    if (with_cfi_closed) row.push_back(*s.cfi_closed);
    out.rows.push_back(std::move(row));
  }
  return out;
}

double end_time(const RunConfig& c) {
  return is_single(c.command) ? c.t : drive_params(c).measurement_time();
}

void apply_axis(RunConfig& c, const std::string& axis, double x) {
  if (axis == "v") c.v = x;
  else if (axis == "delta") c.delta = x;
  // gamma = delta^2 / 4v at fixed delta
  else if (axis == "gamma") c.v = c.delta * c.delta / (4.0 * x);
  else if (axis == "t") c.t = x;
  else if (axis == "t0") c.t0 = x;
  else if (axis == "eps0") c.eps0 = x;
  else if (axis == "amp") c.amp = x;
  else if (axis == "omega") c.omega = x;
  else if (axis == "cycles") c.cycles = static_cast<int>(std::lround(x));
  else if (axis == "frac") c.frac = x;
  else if (axis == "v_c") c.v_c = x;
  else if (axis == "omega_c") c.omega_c = x;
  else if (axis == "beta") c.beta = x;
  else throw ConfigError("axis", "unknown sweep axis '" + axis + "'");
}

std::vector<double> axis_values(const RunConfig& c) {
  if (c.count == 1) return {c.min};
  std::vector<double> out(static_cast<std::size_t>(c.count));
  for (int i = 0; i < c.count; ++i) {
    const double f = static_cast<double>(i) / (c.count - 1);
    out[i] = c.spacing == "log" ? std::exp(std::log(c.min) + f * (std::log(c.max) - std::log(c.min)))
                                : c.min + f * (c.max - c.min);
  }
  out.front() = c.min;
  out.back() = c.max;
  return out;
}

// ---- output -------------------------------------------------------------

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.command == "figure") j["figure"] = c.figure;
  j["target"] = c.target;
  for (auto [name, x] : {std::pair{"v", c.v}, {"delta", c.delta}, {"t0", c.t0}, {"t", c.t},
                         {"eps0", c.eps0}, {"amp", c.amp}, {"omega", c.omega}, {"frac", c.frac},
                         {"v_c", c.v_c}, {"omega_c", c.omega_c}, {"beta", c.beta},
                         {"alpha", c.alpha}, {"beta0", c.beta0}, {"tol", c.tol},
                         {"a_min", c.a_min}, {"a_max", c.a_max}, {"min", c.min}, {"max", c.max},
                         {"control_estimate", c.control_estimate}})
    j[name] = number(x);
  j["cycles"] = c.cycles;
  j["l"] = c.l;
  j["olch"] = c.olch;
  j["basis"] = c.basis;
  j["grid"] = c.grid;
  j["scenario"] = c.scenario;
  j["axis"] = c.axis;
  j["count"] = c.count;
  j["spacing"] = c.spacing;
  j["threads"] = c.threads;
  j["format"] = c.format;
  j["plot"] = c.plot;
  j["output"] = c.output;
  j["config_file"] = c.config_file;
  return j;
}

json diagnostics_json(const Diagnostics& d) {
  json j;
  j["max_norm_drift"] = d.max_norm_drift;
  j["steps_accepted"] = d.steps_accepted;
  j["steps_rejected"] = d.steps_rejected;
  j["divergent_cfi"] = d.divergent_cfi;
  j["warnings"] = d.warnings;
  return j;
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (double x : r) row.push_back(number(x));
    rows.push_back(std::move(row));
  }
  return {{"columns", t.header}, {"rows", std::move(rows)}};
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_table(std::ostream& out, const Table& t, const std::string& format) {
  if (format == "json")
    out << table_json(t).dump(2) << '\n';
  else
    write_csv(out, t);
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("output", "cannot open '" + path.string() + "' for writing");
  body(f);
  if (!f) throw ConfigError("output", "failed writing '" + path.string() + "'");
}

int column_of(const Table& t, const std::string& name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  return it == t.header.end() ? -1 : static_cast<int>(it - t.header.begin()) + 1;
}

// gnuplot script plotting the Fisher columns of each (file, table, label).
std::string plot_script(const std::vector<std::tuple<std::string, const Table*, std::string>>& files,
                        const std::string& xlabel, bool logx) {
  std::ostringstream s;
  s << "# gnuplot script; run from this directory\n"
    << "set datafile separator ','\n"
    << "set datafile missing 'nan'\n"
    << "set logscale y\n";
  if (logx) s << "set logscale x\n";
  s << "set xlabel '" << xlabel << "'\n"
    << "set ylabel 'Fisher information'\n"
    << "set key top left\n"
    << "plot \\\n";
  bool first = true;
  for (const auto& [file, table, label] : files) {
    for (const char* col : {"qfi", "cfi", "bound", "analytic_overlay"}) {
      const int k = column_of(*table, col);
      if (k < 0) continue;
      if (!first) s << ", \\\n";
      first = false;
      s << "  '" << file << "' using 1:" << k << " skip 1 with lines title '" << label
        << (label.empty() ? "" : " ") << col << "'";
    }
  }
  s << "\n";
  return s.str();
}

Table to_table(const Series& s) { return {s.columns, s.rows}; }

struct Output {
  std::vector<Curve> curves;
  json markers = json::object();
  std::string xlabel = "t";
  bool logx = false;
};

int emit(const RunConfig& c, const Output& o, std::ostream& out) {
  const std::string ext = c.format == "json" ? ".json" : ".csv";
  if (c.output == "-") {
    for (const auto& curve : o.curves) write_table(out, curve.table, c.format);
    return kOk;
  }
  fs::path base = c.output;
  fs::path dir;
  std::string stem;
  if (c.command == "figure") {
    dir = base;
    stem = c.figure;
    fs::create_directories(dir);
  } else {
    dir = base.parent_path();
    stem = base.stem().string();
    if (!dir.empty()) fs::create_directories(dir);
  }

  json sidecar;
  sidecar["schema"] = "lzmetro.sidecar/1";
  sidecar["version"] = kVersion;
  sidecar["config"] = config_json(c);
  json outputs = json::array();
  std::vector<std::tuple<std::string, const Table*, std::string>> plotted;
  for (const auto& curve : o.curves) {
    std::string name = c.command == "figure" ? stem + "_" + curve.name + ext
                                             : base.filename().string();
    write_file(dir / name, [&](std::ostream& f) { write_table(f, curve.table, c.format); });
    json entry;
    entry["name"] = curve.name;
    entry["file"] = name;
    entry["columns"] = curve.table.header;
    entry["rows"] = curve.table.rows.size();
    entry["diagnostics"] = diagnostics_json(curve.diagnostics);
    outputs.push_back(std::move(entry));
    plotted.emplace_back(name, &curve.table, c.command == "figure" ? curve.name : "");
  }
  sidecar["outputs"] = std::move(outputs);
  if (!o.markers.empty()) sidecar["markers"] = o.markers;
  if (c.plot && c.format == "csv") {
    const std::string gp = stem + ".gp";
    write_file(dir / gp, [&](std::ostream& f) { f << plot_script(plotted, o.xlabel, o.logx); });
    sidecar["plot_script"] = gp;
  }
  sidecar["timestamp"] = timestamp();
  write_file(dir / (stem + ".meta.json"), [&](std::ostream& f) { f << sidecar.dump(2) << '\n'; });
  return kOk;
}

Curve named(std::string name, Curve curve) {
  curve.name = std::move(name);
  return curve;
}

Output run_figure(const RunConfig& user) {
  RunConfig base = user;
  Output o;
  auto run = [&](RunConfig c, const char* name) {
    validate(c);
    o.curves.push_back(named(name, run_scenario(c)));
    return o.curves.back().table;
  };
  auto last = [](const Table& t, const char* col) {
    const int k = column_of(t, col);
    return k < 0 ? kNaN : t.rows.back()[k - 1];
  };
  if (user.figure == "fig1" || user.figure == "fig2") {
    const bool fig1 = user.figure == "fig1";
    base.v = 1.0;
    base.delta = 1.0;
    base.t0 = 100.0;
    base.t = 100.0;
    base.alpha = kPi;
    base.beta0 = 0.0;
    base.target = fig1 ? "delta" : "v";
    base.v_c = kNaN;
    base.l = 0;
    base.olch = true;

    RunConfig c = base;
    c.command = "single";
    c.basis = "z";
    const Table plain = run(c, "uncontrolled");

    c = base;
    c.command = "single-controlled";
    c.basis = "optimal";
    // (|+x> - |-x>)/sqrt2 = |1> for the Delta plan.
    c.beta = fig1 ? kPi : 0.0;
    const Table ctrl = run(c, "controlled");

    RunConfig m = c;
    m.v_c = user.control_estimate * base.v;
    run(m, "mismatch");
    if (!fig1) {
      RunConfig np = c;
      np.olch = false;
      run(np, "no_pulse");
    }
    const LZParams p{base.v, base.delta, base.t0, base.t};
    const Target target = fig1 ? Target::Delta : Target::V;
    o.markers["cfi_closed_form"] = cfi_closed_form(target, p);
    o.markers["cfi_numerical"] = number(last(plain, "cfi"));
    o.markers["qfi_controlled_closed_form"] = qfi_controlled(target, base.t, base.t0);
    o.markers["qfi_controlled_numerical"] = number(last(ctrl, "qfi"));
    return o;
  }
  // fig3
  base.eps0 = 0.0;
  base.amp = 1.0;
  base.omega = 1.0;
  base.delta = 0.1;
  base.cycles = 60;
  base.frac = 0.0;
  base.omega_c = kNaN;
  base.target = "omega";
  base.l = 0;

  RunConfig c = base;
  c.command = "periodic";
  c.basis = "z";
  c.alpha = kPi / 2.0;  // (|0> + |1>)/sqrt2
  c.beta0 = 0.0;
  run(c, "uncontrolled");

  c = base;
  c.command = "periodic-controlled";
  c.basis = "optimal";
  c.beta = 0.0;
  c.olch = false;
  const Table och = run(c, "och_only");
  c.olch = true;
  const Table full = run(c, "och_olch");

  const DriveParams d = drive_params(base);
  o.markers["qfi_och_olch_closed_form"] = qfi_controlled_omega(d, true);
  o.markers["qfi_och_olch_numerical"] = number(last(full, "qfi"));
  o.markers["qfi_och_only_closed_form"] = qfi_controlled_omega(d, false);
  o.markers["qfi_och_only_numerical"] = number(last(och, "qfi"));
  return o;
}

}  // namespace

void Diagnostics::merge(const Diagnostics& other) {
  max_norm_drift = std::max(max_norm_drift, other.max_norm_drift);
  steps_accepted += other.steps_accepted;
  steps_rejected += other.steps_rejected;
  divergent_cfi += other.divergent_cfi;
  for (const auto& w : other.warnings)
    if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
}

Curve run_scenario(const RunConfig& config) {
  const Series s = evaluate(config, {});
  return {config.command, to_table(s), s.diagnostics};
}

Curve run_sweep(const RunConfig& config) {
  const auto values = axis_values(config);
  const std::size_t n = values.size();
  std::vector<Series> results(n);
  std::vector<std::exception_ptr> errors(n);

  std::vector<RunConfig> points(n, config);
  for (std::size_t i = 0; i < n; ++i) {
    points[i].command = config.scenario;
    apply_axis(points[i], config.axis, values[i]);
    validate(points[i]);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        results[i] = evaluate(points[i], {end_time(points[i])});
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Union of columns, in the canonical order, so rows line up.
  const std::vector<std::string> order{"qfi", "cfi", "p0", "p1", "bound", "analytic_overlay",
                                        "cfi_closed_form"};
  std::vector<std::string> present;
  for (const auto& name : order)
    for (const auto& r : results)
      if (std::find(r.columns.begin(), r.columns.end(), name) != r.columns.end()) {
        present.push_back(name);
        break;
      }

  Curve curve;
  curve.name = "sweep";
  curve.table.header = {config.axis};
  curve.table.header.insert(curve.table.header.end(), present.begin(), present.end());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = results[i];
    std::vector<double> row{values[i]};
    for (const auto& name : present) {
      const auto it = std::find(r.columns.begin(), r.columns.end(), name);
      row.push_back(it == r.columns.end() ? kNaN : r.rows.back()[it - r.columns.begin()]);
    }
    curve.table.rows.push_back(std::move(row));
    curve.diagnostics.merge(r.diagnostics);
  }
  return curve;
}

Curve run_specfun(const RunConfig& config) {
  Curve curve;
  curve.name = "specfun";
  curve.table.header = {"a", "theta1", "theta1_error", "eta1", "log_modulus", "arg_gamma"};
  const std::vector<double> grid =
      config.a_min == config.a_max
          ? std::vector<double>{config.a_min}
          : uniform_grid(config.a_min, config.a_max, static_cast<std::size_t>(config.grid));
  for (double a : grid) {
    const auto th = specfun::theta1_with_error(a);
    const auto lg = specfun::log_gamma_complex({1.0, -a});
    curve.table.rows.push_back(
        {a, th.value, th.error_estimate, specfun::eta1(a), lg.log_modulus, lg.argument});
  }
  return curve;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Parameter estimation for Landau-Zener sweeps and interferometry", "lzmetro"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key = value configuration file (flags take precedence)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1);

  auto num = [&](const char* name, auto& var, const char* help) {
    app.add_option(std::string("--") + name, var, help)->capture_default_str();
  };
  num("target", c.target, "estimated parameter: delta, v or omega");
  num("v", c.v, "sweep rate");
  num("delta", c.delta, "gap");
  num("t0", c.t0, "start offset T0 (sweep runs from -t0)");
  num("t", c.t, "measurement time of a sweep");
  num("eps0", c.eps0, "static bias of the periodic drive");
  num("amp", c.amp, "drive amplitude A");
  num("omega", c.omega, "drive frequency");
  num("cycles", c.cycles, "number of half periods N");
  num("frac", c.frac, "fractional extra half period in [0, 1)");
  num("v_c", c.v_c, "control estimate of v (default: true v)");
  num("omega_c", c.omega_c, "control estimate of omega (default: true omega)");
  num("beta", c.beta, "relative phase of the controlled initial state");
  num("l", c.l, "pulse winding number");
  num("olch", c.olch, "apply the level-crossing pulses");
  num("alpha", c.alpha, "uncontrolled start cos(alpha/2)|0> + e^{i beta0} sin(alpha/2)|1>");
  num("beta0", c.beta0, "phase of the uncontrolled start");
  num("basis", c.basis, "CFI basis: z, x, sld, optimal, none");
  num("tol", c.tol, "integrator tolerance");
  num("grid", c.grid, "number of output times");
  num("a_min", c.a_min, "specfun: first a");
  num("a_max", c.a_max, "specfun: last a");
  num("scenario", c.scenario, "sweep: command evaluated at each point");
  num("axis", c.axis, "sweep: parameter to vary");
  num("min", c.min, "sweep: first value");
  num("max", c.max, "sweep: last value");
  num("count", c.count, "sweep: number of values");
  num("spacing", c.spacing, "sweep: linear or log");
  num("threads", c.threads, "sweep: worker threads (0 = all cores)");
  num("control_estimate", c.control_estimate, "figure: relative control mismatch");
  num("output,-o", c.output, "output file (figure: directory); '-' for stdout");
  num("format", c.format, "csv or json");
  num("plot", c.plot, "write a gnuplot script next to the output");

  app.add_subcommand("single", "uncontrolled single sweep");
  app.add_subcommand("single-controlled", "single sweep under the optimal control");
  app.add_subcommand("periodic", "uncontrolled periodic drive");
  app.add_subcommand("periodic-controlled", "periodic drive with control Hamiltonian and pulses");
  app.add_subcommand("specfun", "tabulate theta1, eta1 and log Gamma(1 - i a)");
  app.add_subcommand("sweep", "endpoint values over a parameter axis");
  auto* fig = app.add_subcommand("figure", "figure datasets: fig1, fig2, fig3");
  fig->add_option("name", c.figure, "fig1 | fig2 | fig3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (auto* opt = app.get_option_no_throw("--config"); opt && opt->count() > 0)
    c.config_file = opt->as<std::string>();

  try {
    validate(c);
    if (c.basis.empty() && c.command != "figure") {
      const std::string& cmd = c.command == "sweep" ? c.scenario : c.command;
      c.basis = is_controlled(cmd) ? "optimal" : "z";
    }
    Output o;
    if (c.command == "figure") {
      o = run_figure(c);
    } else if (c.command == "sweep") {
      o.curves.push_back(run_sweep(c));
      o.xlabel = c.axis;
      o.logx = c.spacing == "log";
    } else if (c.command == "specfun") {
      o.curves.push_back(run_specfun(c));
      o.xlabel = "a";
    } else {
      o.curves.push_back(run_scenario(c));
    }
    for (const auto& curve : o.curves)
      for (const auto& w : curve.diagnostics.warnings) err << "warning: " << w << '\n';
    return emit(c, o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.field() << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const PoleError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace lzm::cli

#include <cmath>
#include <set>
#include <string>

#include "lzmetro/cli.hpp"
#include "lzmetro/errors.hpp"

namespace lzm::cli {

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

void finite(double x, const char* field) {
  require(std::isfinite(x), field, std::string(field) + " must be finite");
}

bool one_of(const std::string& s, std::initializer_list<const char*> options) {
  for (const char* o : options)
    if (s == o) return true;
  return false;
}

void validate_scenario(const std::string& command, const RunConfig& c) {
  const bool single = command == "single" || command == "single-controlled";
  const bool periodic = command == "periodic" || command == "periodic-controlled";
  if (single) {
    require(one_of(c.target, {"delta", "v"}), "target",
            "target must be delta or v for " + command);
    require(c.v > 0.0, "v", "v must be positive");
    require(c.delta >= 0.0, "delta", "delta must be >= 0");
    require(-c.t0 < c.t, "span", "span [-t0, t] is empty (need t > -t0)");
  }
  if (periodic) {
    if (command == "periodic-controlled")
      require(c.target == "omega", "target", "periodic-controlled estimates omega only");
    else
      require(one_of(c.target, {"delta", "omega"}), "target",
              "target must be delta or omega for periodic");
    require(c.amp > 0.0, "amp", "amp must be positive");
    require(c.omega > 0.0, "omega", "omega must be positive");
    require(c.delta >= 0.0, "delta", "delta must be >= 0");
    require(c.cycles >= 1, "cycles", "cycles must be >= 1");
    require(c.frac >= 0.0 && c.frac < 1.0, "frac", "frac must lie in [0, 1)");
    require(std::isnan(c.omega_c) || c.omega_c > 0.0, "omega_c", "omega_c must be positive");
  }
  require(std::isnan(c.v_c) || c.v_c > 0.0, "v_c", "v_c must be positive");
  require(one_of(c.basis, {"", "z", "x", "sld", "optimal", "none"}), "basis",
          "basis must be one of z, x, sld, optimal, none");
  if (c.basis == "optimal")
    require(command != "single" && command != "periodic", "basis",
            "closed-form optimal basis needs a controlled scenario");
}

}  // namespace

void validate(const RunConfig& c) {
  static const std::set<std::string> commands{"single",   "single-controlled", "periodic",
                                              "periodic-controlled", "specfun", "figure",
                                              "sweep"};
  require(commands.count(c.command) == 1, "command", "unknown command '" + c.command + "'");

  for (auto [x, name] : {std::pair{c.v, "v"}, {c.delta, "delta"}, {c.t0, "t0"}, {c.t, "t"},
                         {c.eps0, "eps0"}, {c.amp, "amp"}, {c.omega, "omega"}, {c.frac, "frac"},
                         {c.beta, "beta"}, {c.alpha, "alpha"}, {c.beta0, "beta0"},
                         {c.a_min, "a_min"}, {c.a_max, "a_max"}, {c.min, "min"}, {c.max, "max"}})
    finite(x, name);
  require(c.tol >= 1e-13 && c.tol <= 1e-6, "tol", "tol must lie in [1e-13, 1e-6]");
  require(c.grid >= 2 && c.grid <= 1000000, "grid", "grid must lie in [2, 1e6]");
  require(one_of(c.format, {"csv", "json"}), "format", "format must be csv or json");
  require(c.threads >= 0, "threads", "threads must be >= 0");

  if (c.command == "figure") {
    require(one_of(c.figure, {"fig1", "fig2", "fig3"}), "figure",
            "figure must be fig1, fig2 or fig3");
    require(c.output != "-", "output", "figure writes several files; give --output DIR");
    return;
  }
  if (c.command == "specfun") {
    require(c.a_min <= c.a_max, "a_min", "a_min must not exceed a_max");
    return;
  }
  if (c.command == "sweep") {
    require(one_of(c.scenario, {"single", "single-controlled", "periodic", "periodic-controlled"}),
            "scenario", "sweep scenario must be a run command");
    require(one_of(c.spacing, {"linear", "log"}), "spacing", "spacing must be linear or log");
    require(c.count >= 1, "count", "count must be >= 1");
    require(c.min <= c.max, "min", "min must not exceed max");
    if (c.spacing == "log") require(c.min > 0.0, "min", "log spacing needs min > 0");
    static const std::set<std::string> axes{"v", "delta", "gamma", "t", "t0", "eps0", "amp",
                                            "omega", "cycles", "frac", "v_c", "omega_c", "beta"};
    require(axes.count(c.axis) == 1, "axis", "unknown sweep axis '" + c.axis + "'");
    if (c.axis == "gamma") {
      require(c.delta > 0.0, "delta", "a gamma sweep varies v at fixed delta > 0");
      require(c.min > 0.0, "min", "gamma values must be positive");
    }
    // Each endpoint must itself be a valid run.
    RunConfig probe = c;
    probe.command = c.scenario;
    validate_scenario(c.scenario, probe);
    return;
  }
  validate_scenario(c.command, c);
}

}  // namespace lzm::cli

#pragma once

// Command-line front end: scenario runs, figure presets and sweeps writing
// CSV tables with a JSON sidecar.

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lzm::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3 };

/// Fully resolved run configuration (defaults applied, file and flags merged).
struct RunConfig {
  std::string command;  // single | single-controlled | periodic | periodic-controlled | specfun | figure | sweep
  std::string figure;   // fig1 | fig2 | fig3 for `figure`

  std::string target = "delta";
  double v = 1.0;
  double delta = 1.0;
  double t0 = 100.0;
  double t = 100.0;

  double eps0 = 0.0;
  double amp = 1.0;
  double omega = 1.0;
  int cycles = 60;
  double frac = 0.0;

  /// Control estimates; NaN means "use the true value".
  double v_c = std::numeric_limits<double>::quiet_NaN();
  double omega_c = std::numeric_limits<double>::quiet_NaN();
  double beta = 0.0;
  int l = 0;
  bool olch = true;

  /// Initial state of uncontrolled runs: cos(alpha/2)|0> + e^{i beta0} sin(alpha/2)|1>.
  double alpha = 3.14159265358979323846;
  double beta0 = 0.0;

  /// CFI measurement basis: z, x, sld, optimal, none.
  std::string basis;

  double tol = 1e-10;
  int grid = 400;

  /// specfun table over a in [a_min, a_max].
  double a_min = 0.0;
  double a_max = 4.0;

  /// sweep axis
  std::string scenario = "single";
  std::string axis = "t";
  double min = 50.0;
  double max = 200.0;
  int count = 4;
  std::string spacing = "linear";
  int threads = 0;

  /// Relative control mismatch used by the figure presets' non-optimal curve.
  double control_estimate = 0.9;

  std::string output = "-";
  std::string format = "csv";
  bool plot = true;

  std::string config_file;
};

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& config);

/// Column-labelled numeric table; NaN cells print as "nan".
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// %.17g cells, comma separated, '\n' line ends.
void write_csv(std::ostream& out, const Table& table);
/// Inverse of write_csv. Throws std::runtime_error on malformed input.
Table read_csv(std::istream& in);

struct Diagnostics {
  double max_norm_drift = 0.0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
  std::size_t divergent_cfi = 0;
  std::vector<std::string> warnings;

  void merge(const Diagnostics& other);
};

struct Curve {
  std::string name;
  Table table;
  Diagnostics diagnostics;
};

/// Time-resolved run of a single/periodic command (controlled or not).
/// Columns: t,qfi,cfi,p0,p1,bound,analytic_overlay,cfi_closed_form; cfi is
/// dropped for basis "none", analytic_overlay when no closed form applies and
/// cfi_closed_form outside the uncontrolled |1> start measured in z.
Curve run_scenario(const RunConfig& config);

/// One row per axis value with the endpoint values of `config.scenario`.
Curve run_sweep(const RunConfig& config);

/// a,theta1,theta1_error,eta1,log_modulus,arg_gamma over [a_min, a_max].
Curve run_specfun(const RunConfig& config);

/// Entry point used by the executable. Returns an ExitCode.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lzm::cli

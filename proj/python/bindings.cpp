#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lzmetro/analytic.hpp"
#include "lzmetro/cli.hpp"
#include "lzmetro/errors.hpp"
#include "lzmetro/fisher.hpp"
#include "lzmetro/specfun.hpp"

namespace py = pybind11;
using namespace lzm;

namespace {

LZParams lz(double v, double delta, double t0, double t) { return {v, delta, t0, t}; }

py::dict curve_dict(const cli::Curve& curve) {
  py::dict columns;
  for (std::size_t k = 0; k < curve.table.header.size(); ++k) {
    py::list col;
    for (const auto& row : curve.table.rows) col.append(row[k]);
    columns[py::str(curve.table.header[k])] = col;
  }
  return columns;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Landau-Zener metrology core";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("theta1", &specfun::theta1, py::arg("a"));
  m.def("eta1", &specfun::eta1, py::arg("a"));
  m.def(
      "log_gamma_complex",
      [](std::complex<double> z) {
        const auto r = specfun::log_gamma_complex(z);
        return py::make_tuple(r.log_modulus, r.argument);
      },
      py::arg("z"), "(log|Gamma(z)|, arg Gamma(z))");

  m.def(
      "lz_probabilities",
      [](double v, double delta) {
        const auto p = lz_probabilities(lz(v, delta, 1.0, 1.0));
        return py::make_tuple(p.p0, p.p1);
      },
      py::arg("v"), py::arg("delta"));
  m.def(
      "cfi_closed_form",
      [](const std::string& target, double v, double delta) {
        return cfi_closed_form(parse_target(target), lz(v, delta, 1.0, 1.0));
      },
      py::arg("target"), py::arg("v"), py::arg("delta"));
  m.def(
      "qfi_leading",
      [](const std::string& target, double v, double delta, double t) {
        return qfi_leading(parse_target(target), lz(v, delta, t, t));
      },
      py::arg("target"), py::arg("v"), py::arg("delta"), py::arg("t"));
  m.def(
      "qfi_delta_improved",
      [](double v, double delta, double t) { return qfi_delta_improved(lz(v, delta, t, t)); },
      py::arg("v"), py::arg("delta"), py::arg("t"));
  m.def(
      "qfi_controlled",
      [](const std::string& target, double t, double T) {
        return qfi_controlled(parse_target(target), t, T);
      },
      py::arg("target"), py::arg("t"), py::arg("T"));
  m.def(
      "qfi_controlled_omega",
      [](double amp, double omega, int cycles, double frac, double omega_c, bool with_olch) {
        DriveParams d;
        d.amp = amp;
        d.omega = omega;
        d.cycles = cycles;
        d.frac = frac;
        d.omega_c = omega_c;
        return qfi_controlled_omega(d, with_olch);
      },
      py::arg("amp"), py::arg("omega"), py::arg("cycles"), py::arg("frac") = 0.0,
      py::arg("omega_c") = 1.0, py::arg("with_olch") = true);
  m.def("rwa_max_qfi", &rwa_max_qfi, py::arg("amp"), py::arg("delta"), py::arg("omega"),
        py::arg("T"));
  m.def(
      "max_qfi_periodic",
      [](double amp, double delta, double omega, double T, double tol) {
        return max_qfi_over_initial_states(periodic_schedule(0.0, amp, omega, delta),
                                           periodic_problem(Target::Omega, amp, omega, delta),
                                           0.0, T, tol);
      },
      py::arg("amp"), py::arg("delta"), py::arg("omega"), py::arg("T"), py::arg("tol") = 1e-10,
      "max QFI for omega over initial states of the lab-frame drive (eps0 = 0)");

  py::class_<cli::RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("command", &cli::RunConfig::command)
      .def_readwrite("target", &cli::RunConfig::target)
      .def_readwrite("v", &cli::RunConfig::v)
      .def_readwrite("delta", &cli::RunConfig::delta)
      .def_readwrite("t0", &cli::RunConfig::t0)
      .def_readwrite("t", &cli::RunConfig::t)
      .def_readwrite("eps0", &cli::RunConfig::eps0)
      .def_readwrite("amp", &cli::RunConfig::amp)
      .def_readwrite("omega", &cli::RunConfig::omega)
      .def_readwrite("cycles", &cli::RunConfig::cycles)
      .def_readwrite("frac", &cli::RunConfig::frac)
      .def_readwrite("v_c", &cli::RunConfig::v_c)
      .def_readwrite("omega_c", &cli::RunConfig::omega_c)
      .def_readwrite("beta", &cli::RunConfig::beta)
      .def_readwrite("l", &cli::RunConfig::l)
      .def_readwrite("olch", &cli::RunConfig::olch)
      .def_readwrite("alpha", &cli::RunConfig::alpha)
      .def_readwrite("beta0", &cli::RunConfig::beta0)
      .def_readwrite("basis", &cli::RunConfig::basis)
      .def_readwrite("tol", &cli::RunConfig::tol)
      .def_readwrite("grid", &cli::RunConfig::grid)
      .def_readwrite("scenario", &cli::RunConfig::scenario)
      .def_readwrite("axis", &cli::RunConfig::axis)
      .def_readwrite("min", &cli::RunConfig::min)
      .def_readwrite("max", &cli::RunConfig::max)
      .def_readwrite("count", &cli::RunConfig::count)
      .def_readwrite("spacing", &cli::RunConfig::spacing)
      .def_readwrite("threads", &cli::RunConfig::threads);

  m.def(
      "run",
      [](const cli::RunConfig& config) {
        cli::validate(config);
        if (config.command == "sweep") return curve_dict(cli::run_sweep(config));
        if (config.command == "specfun") return curve_dict(cli::run_specfun(config));
        return curve_dict(cli::run_scenario(config));
      },
      py::arg("config"),
      "Run a scenario, sweep or specfun table; returns a dict of column lists.");
}

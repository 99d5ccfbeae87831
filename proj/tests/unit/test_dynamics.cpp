#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lzmetro/dynamics.hpp"
#include "lzmetro/errors.hpp"
#include "lzmetro/fisher.hpp"
#include "lzmetro/ode.hpp"
#include "oracles.hpp"

using namespace lzm;

TEST_SUITE("dynamics") {

TEST_CASE("DP5 integrator: rotating scalar and dense output") {
  using V = ode::Vec<1>;
  const double w = 3.0;
  auto rhs = [w](double, const V& y, V& dy) { dy[0] = cplx(0.0, w) * y[0]; };
  std::vector<double> samples{0.1, 0.77, 2.5, 5.0};
  std::vector<cplx> got(samples.size());
  ode::StepStats stats;
  const V end = ode::integrate<1>(rhs, V{cplx(1.0)}, 0.0, 5.0, 1e-11, samples,
                                  [&](std::size_t i, const V& y) { got[i] = y[0]; }, stats, 5.0);
  for (std::size_t i = 0; i < samples.size(); ++i)
    CHECK(std::abs(got[i] - std::polar(1.0, w * samples[i])) < 1e-9);
  CHECK(std::abs(end[0] - std::polar(1.0, 15.0)) < 1e-9);
  CHECK(stats.accepted > 0);
}

TEST_CASE("zero Hamiltonian leaves the state unchanged") {
  HamiltonianSchedule h;
  const TwoLevelState psi{cplx(0.6, 0.0), cplx(0.0, 0.8)};
  const auto tr = propagate(h, psi, -5.0, 5.0);
  CHECK(oracle::max_abs(tr.final_state(), psi) < 1e-14);
  CHECK(tr.times.size() == 400);
}

TEST_CASE("static sx eigenstate only picks up a phase") {
  HamiltonianSchedule h;
  h.hx = [](double) { return 2.0; };
  const auto tr = propagate(h, TwoLevelState::plus_x(), 0.0, 10.0);
  CHECK(fidelity(tr.final_state(), TwoLevelState::plus_x()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::arg(tr.final_state().c0 * std::sqrt(2.0)) ==
        doctest::Approx(std::remainder(-10.0, 2 * kPi)).epsilon(1e-9));
}

TEST_CASE("single sweep agrees with a fixed-step RK4 oracle") {
  const auto h = lz_schedule(1.0, 1.0);
  PropagationOptions o;
  o.times = {30.0};
  const auto tr = propagate(h, TwoLevelState::ground(), -30.0, 30.0, o);
  const auto ref = oracle::rk4(h, TwoLevelState::ground(), -30.0, 30.0, 2e-4);
  CHECK(oracle::max_abs(tr.final_state(), ref) < 1e-8);
  CHECK(tr.max_norm_drift < 1e-9);
}

TEST_CASE("norm drift stays below 1e-9 over the long sweep") {
  const auto tr = propagate(lz_schedule(1.0, 1.0), TwoLevelState::ground(), -100.0, 100.0);
  CHECK(tr.max_norm_drift < 1e-9);
  CHECK(tr.final_state().p0() + tr.final_state().p1() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("linearity: superposition start equals superposed solutions") {
  const auto h = lz_schedule(1.3, 0.7);
  PropagationOptions o;
  o.times = {20.0};
  const auto a = propagate(h, TwoLevelState::excited(), -20.0, 20.0, o).final_state();
  const auto b = propagate(h, TwoLevelState::ground(), -20.0, 20.0, o).final_state();
  const cplx x{0.6, 0.0}, y = std::polar(0.8, 1.1);
  const auto s = propagate(h, {x, y}, -20.0, 20.0, o).final_state();
  CHECK(oracle::max_abs(s, x * a + y * b) < 1e-9);
}

TEST_CASE("symmetry maps between the four sweep solutions") {
  PropagationOptions o;
  o.times = {25.0};
  const auto up1 = propagate(lz_schedule(1.0, 1.0), TwoLevelState::ground(), -25.0, 25.0, o).final_state();
  const auto dn0 = propagate(lz_schedule(-1.0, 1.0), TwoLevelState::excited(), -25.0, 25.0, o).final_state();
  const auto up0 = propagate(lz_schedule(1.0, 1.0), TwoLevelState::excited(), -25.0, 25.0, o).final_state();
  // sx H(v) sx = H(-v)
  CHECK(oracle::max_abs(dn0, {up1.c1, up1.c0}) < 1e-9);
  // -i sy K maps the |1> solution to minus the |0> solution
  CHECK(oracle::max_abs(up0, {std::conj(up1.c1), -std::conj(up1.c0)}) < 1e-9);
}

TEST_CASE("pulse unitary equals the matrix exponential") {
  for (int l : {0, 1, 2, -1}) {
    for (double phi : {0.0, 0.4, -2.3}) {
      const PulseEvent p{0.0, phi, l};
      const Mat2 n = std::cos(phi) * Mat2::sigma_x() + cplx(std::sin(phi)) * Mat2::sigma_y();
      const Mat2 ref = oracle::expm(cplx(0.0, -(l + 0.5) * kPi) * n);
      const Mat2 u = p.unitary();
      for (int k = 0; k < 4; ++k) CHECK(std::abs(u.m[k] - ref.m[k]) < 1e-12);
      const double s = (l % 2 == 0) ? -1.0 : 1.0;  // (-1)^{l+1}
      const auto a = apply_pulse(TwoLevelState::excited(), p);
      CHECK(std::abs(a.c1 - s * kI * std::polar(1.0, phi)) < 1e-12);
      const auto b = apply_pulse(TwoLevelState::ground(), p);
      CHECK(std::abs(b.c0 - s * kI * std::polar(1.0, -phi)) < 1e-12);
    }
  }
}

TEST_CASE("pulses apply at their time and samples there are post-pulse") {
  HamiltonianSchedule h;
  h.pulses = {{1.0, 0.0, 0}};
  PropagationOptions o;
  o.times = {0.5, 1.0, 2.0};
  const auto tr = propagate(h, TwoLevelState::excited(), 0.0, 2.0, o);
  CHECK(tr.states[0].p0() == doctest::Approx(1.0));
  CHECK(tr.states[1].p1() == doctest::Approx(1.0));
  CHECK(tr.states[2].p1() == doctest::Approx(1.0));
}

TEST_CASE("two identical pulses compose to -identity") {
  const PulseEvent p{0.0, 0.9, 0};
  const TwoLevelState psi{cplx(0.6), std::polar(0.8, 0.3)};
  CHECK(oracle::max_abs(apply_pulse(apply_pulse(psi, p), p), -1.0 * psi) < 1e-14);
}

TEST_CASE("argument validation") {
  HamiltonianSchedule h;
  const auto psi = TwoLevelState::ground();
  CHECK_THROWS_AS(propagate(h, psi, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(propagate(h, psi, 2.0, 1.0), std::invalid_argument);
  PropagationOptions bad;
  bad.tol = 1e-3;
  CHECK_THROWS_AS(propagate(h, psi, 0.0, 1.0, bad), std::invalid_argument);
  bad.tol = 1e-10;
  bad.times = {0.5, 0.2};
  CHECK_THROWS_AS(propagate(h, psi, 0.0, 1.0, bad), std::invalid_argument);
  bad.times = {1.5};
  CHECK_THROWS_AS(propagate(h, psi, 0.0, 1.0, bad), std::invalid_argument);
  h.pulses = {{0.5, 0.0, 0}, {0.5, 0.0, 0}};
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
  CHECK_THROWS_AS(parse_target("gamma"), ConfigError);
  CHECK(parse_target("Delta") == Target::Delta);
  CHECK_THROWS_AS(lz_problem(Target::Omega, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(periodic_problem(Target::V, 1.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("generator spread of dH/dg") {
  const auto pd = lz_problem(Target::Delta, 1.0, 1.0);
  CHECK(generator_eigen_spread(pd, 37.0) == doctest::Approx(1.0));
  const auto pv = lz_problem(Target::V, 1.0, 1.0);
  CHECK(generator_eigen_spread(pv, -3.0) == doctest::Approx(3.0));
  const auto pw = periodic_problem(Target::Omega, 2.0, 1.0, 0.1);
  const double t = 1.3;
  CHECK(generator_eigen_spread(pw, t) == doctest::Approx(std::abs(2.0 * t * std::sin(t))));
  const auto c = pw.crossings(0.0, 10.0);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(kPi));
  CHECK(c[2] == doctest::Approx(3 * kPi));
}

TEST_CASE("co-propagated derivative matches central differences") {
  const double v = 1.0, d = 1.0, T = 30.0, h = 1e-5;
  for (Target target : {Target::Delta, Target::V}) {
    PropagationOptions o;
    o.times = {T};
    const auto tr = propagate_with_derivative(lz_schedule(v, d), lz_problem(target, v, d),
                                              TwoLevelState::ground(), -T, T, o);
    auto build = [&](double g) {
      return std::make_pair(target == Target::Delta ? lz_schedule(v, g) : lz_schedule(g, d),
                            TwoLevelState::ground());
    };
    const double g = target == Target::Delta ? d : v;
    const auto plus = oracle::shifted(build, g + h, -T, T, 1e-12);
    const auto minus = oracle::shifted(build, g - h, -T, T, 1e-12);
    const auto fd = (1.0 / (2 * h)) * (plus - minus);
    CAPTURE(to_string(target));
    CHECK(oracle::max_abs(tr.final_derivative(), fd) < 1e-5 * std::max(1.0, fd.norm()));
  }
}

TEST_CASE("propagator and its derivative act column by column") {
  const auto h = lz_schedule(1.0, 0.8);
  const auto prob = lz_problem(Target::Delta, 1.0, 0.8);
  const auto u = propagate_unitary_with_derivative(h, prob, -10.0, 10.0);
  PropagationOptions o;
  o.times = {10.0};
  const auto col = propagate_with_derivative(h, prob, TwoLevelState::ground(), -10.0, 10.0, o);
  CHECK(std::abs(u.u(0, 1) - col.final_state().c0) < 1e-9);
  CHECK(std::abs(u.u(1, 1) - col.final_state().c1) < 1e-9);
  CHECK(std::abs(u.du(0, 1) - col.final_derivative().c0) < 1e-8);
  CHECK(std::abs(u.du(1, 1) - col.final_derivative().c1) < 1e-8);
  const Mat2 id = u.u.adjoint() * u.u;
  CHECK(std::abs(id(0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(id(0, 1)) < 1e-9);
}

TEST_CASE("uniform grid covers the span inclusively") {
  const auto g = uniform_grid(-1.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == doctest::Approx(0.0));
}

}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dengue/equilibria.hpp"
#include "dengue/integrate.hpp"

using namespace dengue;

namespace {

State mixed_ic() {
  State s;
  s.x[idx::S] = 9000.0;
  s.x[idx::I1] = 20.0;
  s.x[idx::I2] = 20.0;
  s.x[idx::R] = 960.0;
  s.x[idx::U] = 99000.0;
  s.x[idx::V1] = 500.0;
  s.x[idx::V2] = 500.0;
  return s;
}

double itot(const State& s) {
  return s[idx::I1] + s[idx::I2] + s[idx::I12] + s[idx::I21];
}

}  // namespace

TEST_CASE("trajectory matches an independent high-order reference") {
  ParameterSet p;
  SolverSettings st;
  st.rel_tol = 1e-10;
  const Trajectory traj = integrate(mixed_ic(), p, 0.0, 100.0, st);

  REQUIRE(traj.times.front() == 0.0);
  REQUIRE(traj.times.back() == 100.0);
  const State& xT = traj.states.back();
  CHECK(itot(xT) == doctest::Approx(1.6236795675032418).epsilon(1e-7));
  CHECK(xT[idx::S] == doctest::Approx(7024.482257318372).epsilon(1e-8));
  CHECK(xT[idx::V1] == doctest::Approx(50.25261011486892).epsilon(1e-7));

  // Dense output at an interior sample point.
  bool found50 = false;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (std::abs(traj.times[k] - 50.0) < 1e-12) {
      found50 = true;
      CHECK(itot(traj.states[k]) ==
            doctest::Approx(9.254153096010096).epsilon(1e-6));
      CHECK(traj.states[k].human_total() ==
            doctest::Approx(9999.565547116252).epsilon(1e-8));
    }
  }
  CHECK(found50);

  // Sample spacing respects the dense-output interval.
  REQUIRE(traj.times.size() == 101);
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    CHECK(traj.times[k] - traj.times[k - 1] ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("observed convergence order of the fixed-step limit is five") {
  ParameterSet p;
  const State x0 = mixed_ic();

  SolverSettings tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-10;
  tight.dense_output_interval = 10.0;
  const State ref = integrate(x0, p, 0.0, 10.0, tight).states.back();

  auto run_fixed = [&](double h) {
    SolverSettings st;
    st.rel_tol = 0.9;  // effectively disable error control
    st.abs_tol = 1e6;
    st.max_step = h;
    st.dense_output_interval = 10.0;
    const State out = integrate(x0, p, 0.0, 10.0, st).states.back();
    double err = 0.0;
    for (int i = 0; i < idx::count; ++i) {
      err = std::max(err, std::abs(out[i] - ref[i]));
    }
    return err;
  };

  const double e1 = run_fixed(0.25);
  const double e2 = run_fixed(0.125);
  const double order = std::log2(e1 / e2);
  CAPTURE(e1);
  CAPTURE(e2);
  CHECK(order > 4.3);
}

TEST_CASE("tighter tolerance reduces the error against the reference") {
  ParameterSet p;
  const State x0 = mixed_ic();
  SolverSettings tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-10;
  tight.dense_output_interval = 50.0;
  const State ref = integrate(x0, p, 0.0, 50.0, tight).states.back();

  auto err_at = [&](double rtol) {
    SolverSettings st;
    st.rel_tol = rtol;
    st.dense_output_interval = 50.0;
    const State out = integrate(x0, p, 0.0, 50.0, st).states.back();
    double err = 0.0;
    for (int i = 0; i < idx::count; ++i) {
      err = std::max(err, std::abs(out[i] - ref[i]) /
                              std::max(1.0, std::abs(ref[i])));
    }
    return err;
  };

  const double loose = err_at(1e-5);
  const double tight_err = err_at(1e-10);
  CHECK(tight_err < loose);
  // Global error exceeds the local tolerance through the outbreak peak,
  // where the flow amplifies perturbations; a relative 1e-6 is still ample.
  CHECK(tight_err < 1e-6);
}

TEST_CASE("conserved totals stay pinned when delta is zero") {
  ParameterSet p;
  p.delta = 0.0;
  State x0 = mixed_ic();
  // Start exactly on both demographic equilibria totals.
  const double n_target = p.lambda_N / p.mu;
  const double m_target = p.lambda_M / p.kappa;
  x0.x[idx::S] += n_target - x0.human_total();
  x0.x[idx::U] += m_target - x0.vector_total();

  SolverSettings st;
  st.dense_output_interval = 10.0;
  const Trajectory traj = integrate(x0, p, 0.0, 1000.0, st);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    CAPTURE(traj.times[k]);
    CHECK(std::abs(traj.states[k].human_total() - n_target) <
          1e-8 * n_target);
    CHECK(std::abs(traj.states[k].vector_total() - m_target) <
          1e-8 * m_target);
  }
}

TEST_CASE("the flow commutes with the strain swap") {
  ParameterSet p;
  const State x0 = mixed_ic();
  SolverSettings st;
  st.dense_output_interval = 25.0;
  const Trajectory a = integrate(x0, p, 0.0, 100.0, st);
  const Trajectory b = integrate(strain_swap(x0), p, 0.0, 100.0, st);
  REQUIRE(a.times.size() == b.times.size());
  const State tail_a = strain_swap(a.states.back());
  const State& tail_b = b.states.back();
  for (int i = 0; i < idx::count; ++i) {
    CAPTURE(i);
    CHECK(tail_b[i] ==
          doctest::Approx(tail_a[i]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("solver statistics are consistent") {
  ParameterSet p;
  const Trajectory traj = integrate(mixed_ic(), p, 0.0, 100.0);
  CHECK(traj.meta.steps > 0);
  // FSAL: one evaluation up front, then six per attempted step.
  CHECK(traj.meta.rhs_evals ==
        1 + 6 * (traj.meta.steps + traj.meta.rejects));
}

TEST_CASE("settle reaches the coexistence equilibrium from the mixed IC") {
  ParameterSet p;
  const double tol = default_equilibrium_tol(p);
  const SettleResult res = settle(mixed_ic(), p, tol, 40000.0);
  REQUIRE(res.settled);
  CHECK_FALSE(res.oscillation_suspected);
  CHECK(res.record.residual_norm < tol);
  CHECK(res.record.kind == EquilibriumKind::two_strain_symmetric);

  const EquilibriumRecord direct = two_strain_symmetric_equilibrium(p);
  for (int i = 0; i < idx::count; ++i) {
    CAPTURE(i);
    CHECK(res.record.state[i] ==
          doctest::Approx(direct.state[i]).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("a generic start inside the cycle regime refuses to settle") {
  ParameterSet p;
  p.alpha = 0.627;  // past the Hopf point: the coexistence focus is unstable
  State x0 = mixed_ic();
  x0.x[idx::I1] = 30.0;  // break the strain symmetry, keeping the totals
  x0.x[idx::I2] = 10.0;

  const SettleResult res = settle(x0, p, default_equilibrium_tol(p), 4000.0);
  CHECK_FALSE(res.settled);
  CHECK(res.oscillation_suspected);
  CHECK(res.t_end == 4000.0);
}

TEST_CASE("a strain-symmetric start settles even past the Hopf point") {
  // The symmetric subspace is invariant and the unstable pair points out
  // of it, so the exactly symmetric start genuinely converges to the
  // (unstable) coexistence equilibrium instead of spiralling out.
  ParameterSet p;
  p.alpha = 0.627;
  const SettleResult res = settle(mixed_ic(), p, default_equilibrium_tol(p),
                                  40000.0);
  REQUIRE(res.settled);
  CHECK(res.record.kind == EquilibriumKind::two_strain_symmetric);
  CHECK_FALSE(res.record.stable);
  CHECK(res.record.residual_norm < default_equilibrium_tol(p));
}

TEST_CASE("settle lands on the single-strain equilibrium from inside its "
          "subspace") {
  ParameterSet p;
  State x0{};
  x0.x[idx::S] = 9980.0;
  x0.x[idx::I1] = 20.0;
  x0.x[idx::U] = 99500.0;
  x0.x[idx::V1] = 500.0;

  const double tol = default_equilibrium_tol(p);
  const SettleResult res = settle(x0, p, tol, 60000.0);
  REQUIRE(res.settled);
  CHECK(res.record.kind == EquilibriumKind::one_strain_1);
  CHECK_FALSE(res.record.stable);  // open to invasion by the absent strain
  CHECK(res.record.residual_norm < tol);

  const EquilibriumRecord direct = one_strain_equilibrium(p, 1);
  for (int i = 0; i < idx::count; ++i) {
    CAPTURE(i);
    CHECK(res.record.state[i] ==
          doctest::Approx(direct.state[i]).epsilon(1e-5).scale(1e-6));
  }
}

TEST_CASE("long-time bounds hold along a settled trajectory") {
  ParameterSet p;
  SolverSettings st;
  st.dense_output_interval = 50.0;
  const Trajectory traj = integrate(mixed_ic(), p, 0.0, 20000.0, st);
  const BoundsReport rep = long_time_bounds_check(traj, p);
  CHECK(rep.ok);
  CHECK(rep.max_human_excess < 1e-6);
  CHECK(rep.max_vector_excess < 1e-6);

  // Too short a span is refused rather than silently passed.
  const Trajectory brief = integrate(mixed_ic(), p, 0.0, 10.0);
  CHECK_THROWS_AS(long_time_bounds_check(brief, p), ValidationError);
}

TEST_CASE("solver settings are validated") {
  ParameterSet p;
  SolverSettings st;
  st.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate(mixed_ic(), p, 0.0, 1.0, st), ValidationError);
  SolverSettings st2;
  CHECK_THROWS_AS(integrate(mixed_ic(), p, 5.0, 5.0, st2), ValidationError);
}

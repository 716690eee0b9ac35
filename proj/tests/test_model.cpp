#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "dengue/model.hpp"
#include "dengue/params.hpp"
#include "dengue/state.hpp"

using namespace dengue;

namespace {

State frozen_state() {
  State s;
  s.x = {7000.0, 30.0, 25.0, 400.0, 350.0, 900.0, 850.0, 12.0, 9.0, 250.0,
         90000.0, 4000.0, 3500.0, 160.0};
  return s;
}

State random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> human(0.1, 2000.0);
  std::uniform_real_distribution<double> big(5000.0, 9000.0);
  std::uniform_real_distribution<double> vec_u(1e4, 1e5);
  std::uniform_real_distribution<double> vec_v(10.0, 5000.0);
  State s;
  s.x[idx::S] = big(rng);
  for (int i = 1; i < idx::human_count; ++i) s.x[i] = human(rng);
  s.x[idx::U] = vec_u(rng);
  s.x[idx::V1] = vec_v(rng);
  s.x[idx::V2] = vec_v(rng);
  s.x[idx::V12] = vec_v(rng);
  return s;
}

Mat14 fd_jacobian(const State& s, const ParameterSet& p) {
  Mat14 J;
  for (int j = 0; j < idx::count; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(s.x[j]));
    State lo = s, hi = s;
    lo.x[j] -= h;
    hi.x[j] += h;
    const Derivative flo = vector_field(lo, p);
    const Derivative fhi = vector_field(hi, p);
    for (int i = 0; i < idx::count; ++i) {
      J(i, j) = (fhi[i] - flo[i]) / (2.0 * h);
    }
  }
  return J;
}

}  // namespace

TEST_CASE("vector field matches frozen reference values") {
  ParameterSet p;  // baseline
  const State s = frozen_state();
  const Derivative f = vector_field(s, p);
  const std::array<double, 14> expected = {
      -214.7612697112431,   56.25076649600656,  52.28010321523655,
      15.088000000000001,   10.701999999999998, 28.069830841695676,
      21.468737661273806,   -8.95719084169568,  -1.808257661273803,
      41.68,                5823.325870140441,  -1947.0791776918377,
      -1549.9694687563606,  13.722776307754941};
  for (int i = 0; i < idx::count; ++i) {
    CAPTURE(i);
    CHECK(f[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("compartment sums satisfy the demographic balance identities") {
  ParameterSet p;
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const State s = (trial == 0) ? frozen_state() : random_state(rng);
    const Derivative f = vector_field(s, p);
    const double n = s.human_total();
    const double m = s.vector_total();
    const double human_expect =
        p.lambda_N - p.mu * n - p.delta * (s[idx::I12] + s[idx::I21]);
    const double vector_expect = p.lambda_M - p.kappa * m;
    CHECK(f.human_sum() ==
          doctest::Approx(human_expect).epsilon(1e-10).scale(p.lambda_N));
    CHECK(f.vector_sum() ==
          doctest::Approx(vector_expect).epsilon(1e-10).scale(p.lambda_M));
  }
}

TEST_CASE("vector field commutes with the strain swap") {
  ParameterSet p;
  p.delta = 0.025;  // keep the secondary-infection terms active
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const State s = random_state(rng);
    const Derivative lhs = vector_field(strain_swap(s), p);
    const Derivative rhs = strain_swap(vector_field(s, p));
    for (int i = 0; i < idx::count; ++i) {
      CAPTURE(trial);
      CAPTURE(i);
      CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("single-strain subspace is invariant") {
  ParameterSet p;
  State s;
  s.x = {8000.0, 40.0, 0.0, 300.0, 0.0, 700.0, 0.0, 0.0, 0.0, 0.0,
         95000.0, 4200.0, 0.0, 0.0};
  const Derivative f = vector_field(s, p);
  for (int i : {idx::I2, idx::R2, idx::S2, idx::I12, idx::I21, idx::R,
                idx::V2, idx::V12}) {
    CAPTURE(i);
    CHECK(f[i] == 0.0);
  }
}

TEST_CASE("analytic jacobian matches central finite differences") {
  ParameterSet p;
  std::mt19937 rng(4321);
  for (int trial = 0; trial < 8; ++trial) {
    const State s = (trial == 0) ? frozen_state() : random_state(rng);
    const Mat14 J = jacobian(s, p);
    const Mat14 Jfd = fd_jacobian(s, p);
    const double scale = Jfd.cwiseAbs().maxCoeff();
    const double err = (J - Jfd).cwiseAbs().maxCoeff() / scale;
    CAPTURE(trial);
    CHECK(err < 1e-5);
  }
}

TEST_CASE("jacobian commutes with the strain swap") {
  ParameterSet p;
  std::mt19937 rng(7);
  const State s = random_state(rng);
  const Mat14 J_at_swapped = jacobian(strain_swap(s), p);
  const Mat14 J = jacobian(s, p);
  // Build the swap permutation matrix from its action on basis vectors,
  // then compare J(swap x) against P J(x) P.
  Mat14 P = Mat14::Zero();
  for (int j = 0; j < idx::count; ++j) {
    Vec14 e = Vec14::Zero();
    e(j) = 1.0;
    P.col(j) = strain_swap(e);
  }
  const Mat14 conj = P * J * P;
  const double scale = J.cwiseAbs().maxCoeff();
  CHECK((J_at_swapped - conj).cwiseAbs().maxCoeff() / scale < 1e-12);
}

TEST_CASE("parameter derivatives match central finite differences") {
  std::mt19937 rng(555);
  const State s = random_state(rng);
  for (FreeParam which :
       {FreeParam::alpha, FreeParam::sigma, FreeParam::nu, FreeParam::beta,
        FreeParam::kappa, FreeParam::gamma, FreeParam::delta}) {
    ParameterSet p;
    const double v0 = get_param(p, which);
    const double h = 1e-6 * std::max(1.0, std::abs(v0));
    ParameterSet plo = p, phi = p;
    set_param(plo, which, v0 - h);
    set_param(phi, which, v0 + h);
    const Derivative flo = vector_field(s, plo);
    const Derivative fhi = vector_field(s, phi);
    const Vec14 analytic = parameter_derivative(s, p, which);
    double scale = 0.0;
    for (int i = 0; i < idx::count; ++i) {
      scale = std::max(scale, std::abs((fhi[i] - flo[i]) / (2.0 * h)));
    }
    for (int i = 0; i < idx::count; ++i) {
      const double fd = (fhi[i] - flo[i]) / (2.0 * h);
      CAPTURE(to_string(which));
      CAPTURE(i);
      CHECK(std::abs(analytic(i) - fd) <= 1e-7 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("state helpers round-trip and validate") {
  const State s = frozen_state();
  const Vec14 v = s.to_vec();
  const State back = State::from_vec(v);
  for (int i = 0; i < idx::count; ++i) CHECK(back[i] == s[i]);

  const State twice = strain_swap(strain_swap(s));
  for (int i = 0; i < idx::count; ++i) CHECK(twice[i] == s[i]);

  State neg = s;
  neg.x[idx::I1] = -1e-13 * neg.human_total();
  neg.clamp_small_negatives();
  CHECK(neg[idx::I1] == 0.0);

  State bad = s;
  bad.x[idx::I1] = -5.0;
  CHECK_THROWS_AS(bad.clamp_small_negatives(), ValidationError);
}

TEST_CASE("parameter validation rejects nonsense") {
  ParameterSet p;
  CHECK_NOTHROW(p.validate());
  p.mu = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = ParameterSet{};
  p.beta = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = ParameterSet{};
  CHECK(p.get("alpha") == p.alpha);
  p.set("sigma", 0.5);
  CHECK(p.sigma == 0.5);
  CHECK_THROWS_AS(p.set("bogus", 1.0), ValidationError);
}

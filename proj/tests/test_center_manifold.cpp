#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dengue/center_manifold.hpp"
#include "dengue/equilibria.hpp"
#include "dengue/model.hpp"

using namespace dengue;

TEST_CASE("critical alpha sits exactly on the threshold") {
  ParameterSet p;
  const double ac = critical_alpha(p);
  CHECK(ac == doctest::Approx(0.33354666666666666).epsilon(1e-14));
  ParameterSet crit = p;
  crit.alpha = ac;
  CHECK(r0(crit) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("null vectors annihilate the critical jacobian exactly") {
  ParameterSet p;
  ParameterSet crit = p;
  crit.alpha = critical_alpha(p);

  const EquilibriumRecord dfe = disease_free_equilibrium(crit);
  const Mat14 J = jacobian(dfe.state, crit);

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> wdist(0.2, 3.0);
  for (int trial = 0; trial < 6; ++trial) {
    const double w2 = (trial == 0) ? 1.0 : wdist(rng);
    const double w3 = (trial == 0) ? 1.0 : wdist(rng);
    const Vec14 w = critical_right_vector(crit, w2, w3);
    const Vec14 v = critical_left_vector(crit, w2, w3);
    const double jscale = J.cwiseAbs().maxCoeff();
    CHECK((J * w).cwiseAbs().maxCoeff() <
          1e-12 * jscale * w.cwiseAbs().maxCoeff());
    CHECK((v.transpose() * J).cwiseAbs().maxCoeff() <
          1e-12 * jscale * v.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("left/right pairing matches its closed form") {
  ParameterSet p;
  ParameterSet crit = p;
  crit.alpha = critical_alpha(p);
  const double w2 = 1.3, w3 = 0.7, v2 = 2.0, v3 = 0.5;
  const Vec14 w = critical_right_vector(crit, w2, w3);
  const Vec14 v = critical_left_vector(crit, v2, v3);
  const double expected =
      (1.0 + crit.gamma_bar() / crit.kappa) * (v2 * w2 + v3 * w3);
  CHECK(v.dot(w) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bifurcation coefficients match frozen values at baseline") {
  ParameterSet p;
  const BifurcationCoefficients c = center_manifold_coefficients(p);
  CHECK(c.a == doctest::Approx(-0.8528393189805463).epsilon(1e-12));
  CHECK(c.b == doctest::Approx(37535.99999999999).epsilon(1e-12));
  CHECK(alpha_c(p) == doctest::Approx(0.22034191475781215).epsilon(1e-12));
}

TEST_CASE("sign of a agrees with the alpha_c criterion") {
  // Draws across the parameter table; the quadratic coefficient is negative
  // (forward bifurcation) exactly when alpha* exceeds alpha_c.
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ParameterSet p;
    p.mu = 1e-4 + (0.01 - 1e-4) * u01(rng);
    p.kappa = 0.5 + 1.5 * u01(rng);
    p.gamma = 1.0 + 3.0 * u01(rng);
    p.nu = 0.05 + 0.45 * u01(rng);
    p.delta = 0.05 * u01(rng);
    p.sigma = 0.05 + 0.75 * u01(rng);
    p.beta = 1.0 + 9.0 * u01(rng);
    p.lambda_N = p.mu * 1e4;
    p.lambda_M = p.kappa * 1e5;

    const BifurcationCoefficients c = center_manifold_coefficients(p);
    const double astar = critical_alpha(p);
    const double ac = alpha_c(p);
    // Skip draws landing within round-off of the sign boundary.
    if (std::abs(astar - ac) < 1e-12 * std::max(astar, ac)) continue;
    CAPTURE(trial);
    CHECK(((c.a > 0.0) == (astar < ac)));
    CHECK(c.b > 0.0);
    ++checked;
  }
  CHECK(checked >= 195);
}

TEST_CASE("backward-bifurcation window opens at high reinfection rates") {
  ParameterSet p;  // sigma = 0.45: forward
  CHECK(center_manifold_coefficients(p).a < 0.0);
  ParameterSet hi = p;
  hi.sigma = 0.75;  // strong secondary transmission: backward
  CHECK(center_manifold_coefficients(hi).a > 0.0);
}

TEST_CASE("weights are validated") {
  ParameterSet p;
  CenterManifoldWeights w;
  w.v2 = 0.0;
  CHECK_THROWS_AS(center_manifold_coefficients(p, w), ValidationError);
}

#include "dengue/center_manifold.hpp"

#include <cmath>

namespace dengue {

void CenterManifoldWeights::validate() const {
  if (!(w2 > 0.0 && w3 > 0.0 && v2 > 0.0 && v3 > 0.0)) {
    throw ValidationError(
        "center-manifold weights w2, w3, v2, v3 must all be positive");
  }
}

double critical_alpha(const ParameterSet& p) {
  if (p.beta <= 0.0) throw ValidationError("critical_alpha requires beta > 0");
  return p.kappa * p.gamma_bar() / p.beta;
}

namespace {

struct Coeffs {
  double A1;
  double A2;
  double alpha_star;
};

Coeffs prefactors(const ParameterSet& p) {
  const double Sstar = p.lambda_N / p.mu;
  const double gbar = p.gamma_bar();
  Coeffs c;
  c.A1 = 2.0 * gbar / Sstar * (p.beta / p.kappa + gbar / p.mu);
  c.A2 = 2.0 * p.sigma * p.gamma * p.nu * gbar * gbar /
         (p.nu_bar() * p.delta_bar() * p.mu * Sstar);
  c.alpha_star = critical_alpha(p);
  return c;
}

}  // namespace

BifurcationCoefficients center_manifold_coefficients(
    const ParameterSet& p, const CenterManifoldWeights& weights) {
  p.validate();
  weights.validate();
  const Coeffs c = prefactors(p);
  const double w2 = weights.w2, w3 = weights.w3;
  const double v2 = weights.v2, v3 = weights.v3;
  const double gbar = p.gamma_bar();

  BifurcationCoefficients out;
  out.a = -c.A1 * (v2 * w2 + v3 * w3) * (w2 + w3) +
          (c.A2 / c.alpha_star) * (v2 + v3) * w2 * w3;
  out.b = gbar * gbar / (c.alpha_star * p.mu) * (w2 + w3) * (w2 + w3) +
          gbar / c.alpha_star * (w2 * w2 + w3 * w3);
  return out;
}

double alpha_c(const ParameterSet& p, const CenterManifoldWeights& weights) {
  p.validate();
  weights.validate();
  const Coeffs c = prefactors(p);
  const double w2 = weights.w2, w3 = weights.w3;
  const double v2 = weights.v2, v3 = weights.v3;
  return c.A2 * (v2 + v3) * w2 * w3 /
         (c.A1 * (v2 * w2 + v3 * w3) * (w2 + w3));
}

Vec14 critical_right_vector(const ParameterSet& p, double w2, double w3) {
  p.validate();
  const double alpha_star = critical_alpha(p);
  const double Sstar = p.lambda_N / p.mu;
  const double Ustar = p.lambda_M / p.kappa;
  const double gbar = p.gamma_bar();
  const double vu = gbar * Ustar / (alpha_star * Sstar);

  Vec14 w = Vec14::Zero();
  w(idx::S) = -gbar / p.mu * (w2 + w3);
  w(idx::I1) = w2;
  w(idx::I2) = w3;
  w(idx::R1) = p.gamma / p.nu_bar() * w2;
  w(idx::R2) = p.gamma / p.nu_bar() * w3;
  w(idx::S1) = p.nu * p.gamma / (p.mu * p.nu_bar()) * w2;
  w(idx::S2) = p.nu * p.gamma / (p.mu * p.nu_bar()) * w3;
  w(idx::U) = -vu * (w2 + w3);
  w(idx::V1) = vu * w2;
  w(idx::V2) = vu * w3;
  return w;
}

Vec14 critical_left_vector(const ParameterSet& p, double v2, double v3) {
  p.validate();
  const double alpha_star = critical_alpha(p);
  const double Sstar = p.lambda_N / p.mu;
  const double Ustar = p.lambda_M / p.kappa;
  const double gbar = p.gamma_bar();
  const double hv = alpha_star * Sstar / (p.kappa * Ustar);

  Vec14 v = Vec14::Zero();
  v(idx::I1) = v2;
  v(idx::I2) = v3;
  v(idx::I12) = gbar / p.delta_bar() * v3;
  v(idx::I21) = gbar / p.delta_bar() * v2;
  v(idx::V1) = hv * v2;
  v(idx::V2) = hv * v3;
  v(idx::V12) = hv * (v2 + v3);
  return v;
}

}  // namespace dengue

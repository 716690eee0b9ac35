#include "dengue/model.hpp"

#include <string>

namespace dengue {

Derivative vector_field(const State& s, const ParameterSet& p) {
  const double S = s[idx::S], I1 = s[idx::I1], I2 = s[idx::I2];
  const double R1 = s[idx::R1], R2 = s[idx::R2];
  const double S1 = s[idx::S1], S2 = s[idx::S2];
  const double I12 = s[idx::I12], I21 = s[idx::I21], R = s[idx::R];
  const double U = s[idx::U], V1 = s[idx::V1], V2 = s[idx::V2],
               V12 = s[idx::V12];

  const double N = s.human_total();
  const double M = s.vector_total();
  if (!(N > 0.0) || !(M > 0.0)) {
    throw ValidationError("vector_field requires N > 0 and M > 0");
  }

  const double aM = p.alpha / M;
  const double sM = p.sigma / M;
  const double bN = p.beta / N;
  const double gbar = p.gamma_bar();
  const double dbar = p.delta_bar();
  const double nbar = p.nu_bar();

  Derivative f;
  f[idx::S] = p.lambda_N - aM * S * (V1 + V2 + 2.0 * V12) - p.mu * S;
  f[idx::I1] = aM * S * (V1 + V12) - gbar * I1;
  f[idx::I2] = aM * S * (V2 + V12) - gbar * I2;
  f[idx::R1] = p.gamma * I1 - nbar * R1;
  f[idx::R2] = p.gamma * I2 - nbar * R2;
  f[idx::S1] = p.nu * R1 - sM * S1 * (V2 + V12) - p.mu * S1;
  f[idx::S2] = p.nu * R2 - sM * S2 * (V1 + V12) - p.mu * S2;
  f[idx::I12] = sM * S1 * (V2 + V12) - dbar * I12;
  f[idx::I21] = sM * S2 * (V1 + V12) - dbar * I21;
  f[idx::R] = p.gamma * (I12 + I21) - p.mu * R;
  f[idx::U] = p.lambda_M - bN * U * (I1 + I2 + I12 + I21) - p.kappa * U;
  f[idx::V1] = bN * U * (I1 + I21) - bN * V1 * (I2 + I12) - p.kappa * V1;
  f[idx::V2] = bN * U * (I2 + I12) - bN * V2 * (I1 + I21) - p.kappa * V2;
  f[idx::V12] = bN * V1 * (I2 + I12) + bN * V2 * (I1 + I21) - p.kappa * V12;
  return f;
}

Mat14 jacobian(const State& s, const ParameterSet& p) {
  const double S = s[idx::S], I1 = s[idx::I1], I2 = s[idx::I2];
  const double R1 = s[idx::R1], R2 = s[idx::R2];
  const double S1 = s[idx::S1], S2 = s[idx::S2];
  const double I12 = s[idx::I12], I21 = s[idx::I21], R = s[idx::R];
  const double U = s[idx::U], V1 = s[idx::V1], V2 = s[idx::V2],
               V12 = s[idx::V12];

  const double N = s.human_total();
  const double M = s.vector_total();
  if (!(N > 0.0) || !(M > 0.0)) {
    throw ValidationError("jacobian requires N > 0 and M > 0");
  }
  const double N2 = N * N;
  const double M2 = M * M;

  // Auxiliary quantities of the linearization. The A_* with vector
  // numerators carry 1/M^2, the human-side ones carry 1/N^2; V-row
  // combinations A_UV1/A_UV2/A_VV collect the mixed terms.
  const double A_V = (V1 + V2 + 2.0 * V12) / M2;
  const double A_1 = (V1 + V12) / M2;
  const double A_2 = (V2 + V12) / M2;
  const double A_U = (U - V12) / M2;
  const double A_UV = (V1 + V2 + 2.0 * U) / M2;
  const double A_U1 = (V1 + U) / M2;
  const double A_U2 = (V2 + U) / M2;
  const double A_I = (I1 + I2 + I12 + I21) / N2;
  const double A_N = (S + R1 + R2 + S1 + S2 + R) / N2;
  const double A_I1 = p.beta * (I1 + I21) / N2;
  const double A_I2 = p.beta * (I2 + I12) / N2;
  const double A_UV1 = -U * A_I1 + V1 * A_I2;
  const double A_UV2 = -U * A_I2 + V2 * A_I1;
  const double A_VV = -V1 * A_I2 - V2 * A_I1;

  const double al = p.alpha, sg = p.sigma, bt = p.beta;
  const double gbar = p.gamma_bar();
  const double dbar = p.delta_bar();
  const double nbar = p.nu_bar();

  Mat14 J = Mat14::Zero();

  // S row
  J(idx::S, idx::S) = -al * M * A_V - p.mu;
  J(idx::S, idx::U) = al * S * A_V;
  J(idx::S, idx::V1) = -al * S * A_U;
  J(idx::S, idx::V2) = -al * S * A_U;
  J(idx::S, idx::V12) = -al * S * A_UV;

  // I1 row
  J(idx::I1, idx::S) = al * M * A_1;
  J(idx::I1, idx::I1) = -gbar;
  J(idx::I1, idx::U) = -al * S * A_1;
  J(idx::I1, idx::V1) = al * S * A_U2;
  J(idx::I1, idx::V2) = -al * S * A_1;
  J(idx::I1, idx::V12) = al * S * A_U2;

  // I2 row
  J(idx::I2, idx::S) = al * M * A_2;
  J(idx::I2, idx::I2) = -gbar;
  J(idx::I2, idx::U) = -al * S * A_2;
  J(idx::I2, idx::V1) = -al * S * A_2;
  J(idx::I2, idx::V2) = al * S * A_U1;
  J(idx::I2, idx::V12) = al * S * A_U1;

  // R1, R2 rows
  J(idx::R1, idx::I1) = p.gamma;
  J(idx::R1, idx::R1) = -nbar;
  J(idx::R2, idx::I2) = p.gamma;
  J(idx::R2, idx::R2) = -nbar;

  // S1 row
  J(idx::S1, idx::R1) = p.nu;
  J(idx::S1, idx::S1) = -sg * M * A_2 - p.mu;
  J(idx::S1, idx::U) = sg * S1 * A_2;
  J(idx::S1, idx::V1) = sg * S1 * A_2;
  J(idx::S1, idx::V2) = -sg * S1 * A_U1;
  J(idx::S1, idx::V12) = -sg * S1 * A_U1;

  // S2 row
  J(idx::S2, idx::R2) = p.nu;
  J(idx::S2, idx::S2) = -sg * M * A_1 - p.mu;
  J(idx::S2, idx::U) = sg * S2 * A_1;
  J(idx::S2, idx::V1) = -sg * S2 * A_U2;
  J(idx::S2, idx::V2) = sg * S2 * A_1;
  J(idx::S2, idx::V12) = -sg * S2 * A_U2;

  // I12 row
  J(idx::I12, idx::S1) = sg * M * A_2;
  J(idx::I12, idx::I12) = -dbar;
  J(idx::I12, idx::U) = -sg * S1 * A_2;
  J(idx::I12, idx::V1) = -sg * S1 * A_2;
  J(idx::I12, idx::V2) = sg * S1 * A_U1;
  J(idx::I12, idx::V12) = sg * S1 * A_U1;

  // I21 row
  J(idx::I21, idx::S2) = sg * M * A_1;
  J(idx::I21, idx::I21) = -dbar;
  J(idx::I21, idx::U) = -sg * S2 * A_1;
  J(idx::I21, idx::V1) = sg * S2 * A_U2;
  J(idx::I21, idx::V2) = -sg * S2 * A_1;
  J(idx::I21, idx::V12) = sg * S2 * A_U2;

  // R row
  J(idx::R, idx::I12) = p.gamma;
  J(idx::R, idx::I21) = p.gamma;
  J(idx::R, idx::R) = -p.mu;

  // U row: uninfected human columns get +beta U A_I, infectious human
  // columns get -beta U A_N.
  for (int c : {idx::S, idx::R1, idx::R2, idx::S1, idx::S2, idx::R}) {
    J(idx::U, c) = bt * U * A_I;
  }
  for (int c : {idx::I1, idx::I2, idx::I12, idx::I21}) {
    J(idx::U, c) = -bt * U * A_N;
  }
  J(idx::U, idx::U) = -bt * N * A_I - p.kappa;

  // V1 row
  for (int c = 0; c < idx::human_count; ++c) J(idx::V1, c) = A_UV1;
  J(idx::V1, idx::I1) += bt * U / N;
  J(idx::V1, idx::I2) += -bt * V1 / N;
  J(idx::V1, idx::I12) += -bt * V1 / N;
  J(idx::V1, idx::I21) += bt * U / N;
  J(idx::V1, idx::U) = N * A_I1;
  J(idx::V1, idx::V1) = -N * A_I2 - p.kappa;

  // V2 row
  for (int c = 0; c < idx::human_count; ++c) J(idx::V2, c) = A_UV2;
  J(idx::V2, idx::I1) += -bt * V2 / N;
  J(idx::V2, idx::I2) += bt * U / N;
  J(idx::V2, idx::I12) += bt * U / N;
  J(idx::V2, idx::I21) += -bt * V2 / N;
  J(idx::V2, idx::U) = N * A_I2;
  J(idx::V2, idx::V2) = -N * A_I1 - p.kappa;

  // V12 row
  for (int c = 0; c < idx::human_count; ++c) J(idx::V12, c) = A_VV;
  J(idx::V12, idx::I1) += bt * V2 / N;
  J(idx::V12, idx::I2) += bt * V1 / N;
  J(idx::V12, idx::I12) += bt * V1 / N;
  J(idx::V12, idx::I21) += bt * V2 / N;
  J(idx::V12, idx::V1) = N * A_I2;
  J(idx::V12, idx::V2) = N * A_I1;
  J(idx::V12, idx::V12) = -p.kappa;

  return J;
}

std::string_view to_string(FreeParam p) {
  switch (p) {
    case FreeParam::alpha:
      return "alpha";
    case FreeParam::sigma:
      return "sigma";
    case FreeParam::nu:
      return "nu";
    case FreeParam::beta:
      return "beta";
    case FreeParam::kappa:
      return "kappa";
    case FreeParam::gamma:
      return "gamma";
    case FreeParam::delta:
      return "delta";
  }
  return "?";
}

FreeParam free_param_from_string(std::string_view name) {
  if (name == "alpha") return FreeParam::alpha;
  if (name == "sigma") return FreeParam::sigma;
  if (name == "nu") return FreeParam::nu;
  if (name == "beta") return FreeParam::beta;
  if (name == "kappa") return FreeParam::kappa;
  if (name == "gamma") return FreeParam::gamma;
  if (name == "delta") return FreeParam::delta;
  throw ValidationError("not a continuable parameter: " + std::string(name));
}

double get_param(const ParameterSet& p, FreeParam which) {
  return p.get(to_string(which));
}

void set_param(ParameterSet& p, FreeParam which, double value) {
  p.set(to_string(which), value);
}

Vec14 parameter_derivative(const State& s, const ParameterSet& p,
                           FreeParam which) {
  const double S = s[idx::S], I1 = s[idx::I1], I2 = s[idx::I2];
  const double R1 = s[idx::R1], R2 = s[idx::R2];
  const double S1 = s[idx::S1], S2 = s[idx::S2];
  const double I12 = s[idx::I12], I21 = s[idx::I21];
  const double U = s[idx::U], V1 = s[idx::V1], V2 = s[idx::V2],
               V12 = s[idx::V12];
  const double N = s.human_total();
  const double M = s.vector_total();
  if (!(N > 0.0) || !(M > 0.0)) {
    throw ValidationError("parameter_derivative requires N > 0 and M > 0");
  }

  Vec14 g = Vec14::Zero();
  switch (which) {
    case FreeParam::alpha:
      g(idx::S) = -(S / M) * (V1 + V2 + 2.0 * V12);
      g(idx::I1) = (S / M) * (V1 + V12);
      g(idx::I2) = (S / M) * (V2 + V12);
      break;
    case FreeParam::sigma:
      g(idx::S1) = -(S1 / M) * (V2 + V12);
      g(idx::S2) = -(S2 / M) * (V1 + V12);
      g(idx::I12) = (S1 / M) * (V2 + V12);
      g(idx::I21) = (S2 / M) * (V1 + V12);
      break;
    case FreeParam::nu:
      g(idx::R1) = -R1;
      g(idx::R2) = -R2;
      g(idx::S1) = R1;
      g(idx::S2) = R2;
      break;
    case FreeParam::beta:
      g(idx::U) = -(U / N) * (I1 + I2 + I12 + I21);
      g(idx::V1) = (U / N) * (I1 + I21) - (V1 / N) * (I2 + I12);
      g(idx::V2) = (U / N) * (I2 + I12) - (V2 / N) * (I1 + I21);
      g(idx::V12) = (V1 / N) * (I2 + I12) + (V2 / N) * (I1 + I21);
      break;
    case FreeParam::kappa:
      g(idx::U) = -U;
      g(idx::V1) = -V1;
      g(idx::V2) = -V2;
      g(idx::V12) = -V12;
      break;
    case FreeParam::gamma:
      g(idx::I1) = -I1;
      g(idx::I2) = -I2;
      g(idx::R1) = I1;
      g(idx::R2) = I2;
      g(idx::I12) = -I12;
      g(idx::I21) = -I21;
      g(idx::R) = I12 + I21;
      break;
    case FreeParam::delta:
      g(idx::I12) = -I12;
      g(idx::I21) = -I21;
      break;
  }
  return g;
}

}  // namespace dengue

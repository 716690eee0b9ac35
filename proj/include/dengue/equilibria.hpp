#pragma once

#include <complex>

#include "dengue/model.hpp"

namespace dengue {

// Equilibria with max |vector_field| above tol are rejected; default is
// relative to the human recruitment rate.
inline double default_equilibrium_tol(const ParameterSet& p) {
  return 1e-9 * p.lambda_N;
}

// Real parts in (-margin, +margin) are treated as undetermined: such
// records carry stable = false.
inline constexpr double kStabilityMargin = 1e-8;

enum class EquilibriumKind {
  disease_free,
  one_strain_1,
  one_strain_2,
  two_strain_symmetric,
  generic
};

std::string_view to_string(EquilibriumKind k);

struct EquilibriumRecord {
  State state;
  EquilibriumKind kind = EquilibriumKind::generic;
  CVec14 eigenvalues = CVec14::Zero();
  bool stable = false;
  double residual_norm = 0.0;  // max-norm of vector_field at state
};

// Basic reproduction number sqrt(alpha beta / (kappa (gamma + mu))).
double r0(const ParameterSet& p);

// S = lambda_N/mu, U = lambda_M/kappa, everything else zero.
EquilibriumRecord disease_free_equilibrium(const ParameterSet& p);

// Closed-form spectrum at the disease-free equilibrium:
// -mu (x4), -kappa (x2), -nu_bar (x2), -delta_bar (x2) and both roots of
// Sigma^2 + (gamma+kappa+mu) Sigma + (gamma kappa + kappa mu - alpha beta) = 0,
// each with multiplicity 2.
CVec14 dfe_analytic_eigenvalues(const ParameterSet& p);

// Closed-form endemic equilibrium with a single circulating strain.
// Requires R0 > 1; strain = 1 or 2.
EquilibriumRecord one_strain_equilibrium(const ParameterSet& p, int strain);

// Reduced coordinates of the symmetric two-strain solve: x is the combined
// human-side force of infection, y the per-strain vector force, y12 = x - y.
struct ReducedTwoStrainVariables {
  double x = 0.0;
  double y = 0.0;
  double y12 = 0.0;
  double p = 0.0;  // sigma / alpha
  double q = 0.0;  // nu gamma / (nu_bar delta_bar)
};

// Symmetric (strain-swap invariant) coexistence equilibrium. Solves the
// reduced 2-equation system for (x, y), reconstructs the 14 components,
// then Newton-polishes on the full system. For delta > 0 the human total
// is resolved by a damped outer fixed point.
EquilibriumRecord two_strain_symmetric_equilibrium(const ParameterSet& p);
EquilibriumRecord two_strain_symmetric_equilibrium(
    const ParameterSet& p, ReducedTwoStrainVariables* reduced_out);

// Damped Newton iteration on vector_field from the given guess.
EquilibriumRecord refine_equilibrium(const State& guess,
                                     const ParameterSet& p, double tol);

// Label an equilibrium state by which strain components are present
// (absence threshold 1e-10 * lambda_N / mu).
EquilibriumKind classify_kind(const State& s, const ParameterSet& p);

// Fill eigenvalues and the stable flag from the Jacobian spectrum at
// eq.state.
void classify_stability(EquilibriumRecord& eq, const ParameterSet& p);

}  // namespace dengue

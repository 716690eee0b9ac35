#pragma once

#include "dengue/params.hpp"
#include "dengue/types.hpp"

namespace dengue {

// Free components of the critical right (w2, w3) and left (v2, v3)
// eigenvectors; the remaining components follow from closed forms.
struct CenterManifoldWeights {
  double w2 = 1.0;
  double w3 = 1.0;
  double v2 = 1.0;
  double v3 = 1.0;

  void validate() const;  // all strictly positive

  bool operator==(const CenterManifoldWeights&) const = default;
};

struct BifurcationCoefficients {
  double a = 0.0;
  double b = 0.0;
};

// Critical primary infection rate alpha* = kappa (gamma + mu) / beta, i.e.
// the alpha with R0 = 1.
double critical_alpha(const ParameterSet& p);

// Quadratic (a) and transversality (b) coefficients of the center-manifold
// reduction at the disease-free equilibrium, evaluated with alpha = alpha*.
BifurcationCoefficients center_manifold_coefficients(
    const ParameterSet& p, const CenterManifoldWeights& weights = {});

// Threshold value of alpha* below which a > 0 (backward bifurcation).
double alpha_c(const ParameterSet& p, const CenterManifoldWeights& weights = {});

// Null vectors of the Jacobian at the disease-free equilibrium with
// alpha = alpha* (the kernel is two-dimensional; (w2, w3) / (v2, v3) select
// the member). Exact closed forms; no normalization applied.
Vec14 critical_right_vector(const ParameterSet& p, double w2, double w3);
Vec14 critical_left_vector(const ParameterSet& p, double v2, double v3);

}  // namespace dengue

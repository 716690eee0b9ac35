#pragma once

#include <array>
#include <vector>

#include "dengue/continuation.hpp"

namespace dengue {

// A closed orbit discretized as a piecewise degree-4 polynomial over 40
// uniform intervals of the scaled period [0, 1].
struct PeriodicOrbit {
  std::vector<double> mesh;    // time fractions in [0, 1]; first 0, last 1
  std::vector<State> states;   // one per mesh node; first == last
  double period = 0.0;         // months
  double param_value = 0.0;
  double amplitude = 0.0;      // max minus min of I_total over the orbit
  CVec14 floquet = CVec14::Zero();  // multipliers, descending modulus
  bool stable = false;         // every nontrivial multiplier inside the
                               // unit circle
  double residual_norm = 0.0;  // collocation defect, max over collocation
                               // nodes of |x' - f| / component scale

  // Interpolated state at time fraction theta in [0, 1].
  State at(double theta) const;
};

// Continues the family of periodic orbits born at a Hopf event across
// `range` in the event's free parameter. The first orbit comes from the
// normal-form predictor (a small ellipse in the crossing eigenplane with
// period 2*pi/omega); the family is then followed by pseudo-arclength
// steps. Each orbit solves a collocation boundary value problem (degree 4,
// 40 intervals, Gauss-Legendre nodes, integral phase condition) and
// carries Floquet multipliers from the condensed monodromy of the
// discretization. Orbits are returned ordered from the Hopf point outward;
// exact landings are inserted where the family crosses a range boundary.
std::vector<PeriodicOrbit> continue_periodic_orbits(
    const BifurcationEvent& hopf, const ParameterSet& params,
    std::array<double, 2> range, const ContinuationSettings& settings = {});

}  // namespace dengue

#pragma once

#include <array>
#include <vector>

#include "dengue/equilibria.hpp"

namespace dengue {

struct ContinuationSettings {
  double initial_step = 1e-3;  // parameter-scale arclength step
  double min_step = 1e-6;
  double max_step = 5e-2;
  int max_steps = 5000;        // accepted points per direction
  double corrector_tol = 0.0;  // <= 0: default_equilibrium_tol(params)
  int max_newton_iters = 8;
  int max_halvings = 8;
  double event_param_tol = 1e-9;  // bisection width in the free parameter

  void validate() const;
};

enum class EventKind { branch_point, hopf, fold };
std::string_view to_string(EventKind k);

struct BifurcationEvent {
  EventKind kind = EventKind::branch_point;
  FreeParam param_name = FreeParam::alpha;
  double param_value = 0.0;
  State state;
  // Values of the triggering test function at the bracketing points.
  std::array<double, 2> test_values{0.0, 0.0};
  // Imaginary part of the crossing pair at a Hopf; 0 otherwise.
  double imag_pair = 0.0;
};

struct TestFunctionValues {
  // Largest real eigenvalue. Stands in for the product of near-zero real
  // parts: it changes sign exactly when a real crossing enters or leaves
  // the right half plane, and still works for the strain-symmetric double
  // crossing, where a plain product would keep its sign. -inf when the
  // spectrum has no real eigenvalue.
  double real_eig_max = 0.0;
  // Largest real part among truly complex eigenvalues; -inf when the
  // spectrum is entirely real.
  double complex_pair_max_real = 0.0;
};

TestFunctionValues test_functions(const EquilibriumRecord& eq);

struct Branch {
  std::vector<EquilibriumRecord> points;  // ordered along the branch
  std::vector<double> param_values;       // one per point
  std::vector<BifurcationEvent> events;
};

// Pseudo-arclength continuation of an equilibrium branch in free_param over
// range = [lo, hi]. Runs in both directions when the start lies inside the
// range; points come out ordered by increasing parameter-side arclength.
Branch continue_equilibria(const EquilibriumRecord& start,
                           const ParameterSet& params, FreeParam free_param,
                           std::array<double, 2> range,
                           const ContinuationSettings& settings = {});

// Equilibria on the intersecting branches at a branch point, found by
// Newton landing along Jacobian null-space directions at
// param = event param + param_offset. A strain-symmetric double zero
// yields the symmetric direction plus the two single-strain directions.
std::vector<EquilibriumRecord> switch_branch(
    const BifurcationEvent& bp, const ParameterSet& params,
    double param_offset, const ContinuationSettings& settings = {});

}  // namespace dengue

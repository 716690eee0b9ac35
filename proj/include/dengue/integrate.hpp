#pragma once

#include <cstdint>
#include <vector>

#include "dengue/equilibria.hpp"
#include "dengue/model.hpp"

namespace dengue {

struct SolverSettings {
  double rel_tol = 1e-8;
  // <= 0 means auto: 1e-10 * lambda_N / mu of the parameter set in use.
  double abs_tol = 0.0;
  // <= 0 means no cap (months).
  double max_step = 0.0;
  // Spacing of the dense-output samples (months).
  double dense_output_interval = 1.0;

  double resolved_abs_tol(const ParameterSet& p) const {
    return abs_tol > 0.0 ? abs_tol : 1e-10 * p.lambda_N / p.mu;
  }
  void validate() const;
};

struct SolverStats {
  std::int64_t steps = 0;      // accepted steps
  std::int64_t rejects = 0;    // rejected step attempts
  std::int64_t rhs_evals = 0;  // vector_field evaluations
};

struct Trajectory {
  std::vector<double> times;  // strictly increasing (months)
  std::vector<State> states;
  SolverStats meta;
};

// Adaptive embedded Runge-Kutta 5(4) with 4th-order continuous output,
// sampled every settings.dense_output_interval months (t0 and t1 always
// included).
Trajectory integrate(const State& x0, const ParameterSet& p, double t0,
                     double t1, const SolverSettings& settings = {});

struct SettleResult {
  bool settled = false;
  // Set on timeout when the trailing window still shows sustained
  // variation of the total infectious count.
  bool oscillation_suspected = false;
  double t_end = 0.0;
  // Valid only when settled.
  EquilibriumRecord record;
};

// Integrate until the vector field is small enough for a guarded Newton
// polish to finish the job, or until t_max months have elapsed.
SettleResult settle(const State& x0, const ParameterSet& p, double tol,
                    double t_max, const SolverSettings& settings = {});

struct BoundsReport {
  bool ok = true;
  double max_human_excess = 0.0;   // max over trailing half of N/(lambda_N/mu) - 1
  double max_vector_excess = 0.0;  // same for M/(lambda_M/kappa)
  std::vector<std::string> violations;
};

// Check the asymptotic population bounds N <= lambda_N/mu and
// M <= lambda_M/kappa (relative slack 1e-6) over the trailing half of the
// trajectory. Requires a span of at least 10/min(mu, kappa) months.
BoundsReport long_time_bounds_check(const Trajectory& traj,
                                    const ParameterSet& p);

}  // namespace dengue

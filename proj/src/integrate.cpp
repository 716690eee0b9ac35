#include "dengue/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace dengue {

void SolverSettings::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("rel_tol must be positive");
  if (!(dense_output_interval > 0.0)) {
    throw ValidationError("dense_output_interval must be positive");
  }
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// b - bhat, for the embedded 4th-order error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseSegment {
  double t0, h;
  Vec14 r1, r2, r3, r4, r5;

  Vec14 eval(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
  }
};

State clamped_state(const Vec14& v, const char* where) {
  State s = State::from_vec(v);
  try {
    s.clamp_small_negatives();
  } catch (const ValidationError& err) {
    throw NumericalError(std::string(where) +
                         ": positivity violated beyond round-off: " +
                         err.what());
  }
  return s;
}

}  // namespace

Trajectory integrate(const State& x0, const ParameterSet& p, double t0,
                     double t1, const SolverSettings& settings) {
  p.validate();
  settings.validate();
  x0.validate();
  if (!(t1 > t0)) throw ValidationError("integrate requires t1 > t0");

  const double atol = settings.resolved_abs_tol(p);
  const double rtol = settings.rel_tol;
  const double hmax = settings.max_step > 0.0
                          ? settings.max_step
                          : std::numeric_limits<double>::infinity();

  Trajectory traj;
  auto rhs = [&](const Vec14& v) {
    return vector_field(State::from_vec(v), p).to_vec();
  };

  Vec14 y = x0.to_vec();
  double t = t0;
  Vec14 k1 = rhs(y);
  traj.meta.rhs_evals++;

  // Initial step size from the ratio of state to derivative norms, both in
  // tolerance-scaled units so the guess itself is tolerance-independent.
  double h = 0.0;
  {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < idx::count; ++i) {
      const double sc = atol + rtol * std::abs(y(i));
      d0 += (y(i) / sc) * (y(i) / sc);
      d1 += (k1(i) / sc) * (k1(i) / sc);
    }
    d0 = std::sqrt(d0 / idx::count);
    d1 = std::sqrt(d1 / idx::count);
    h = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-6;
    h = std::min({h, hmax, t1 - t0});
  }

  traj.times.push_back(t0);
  traj.states.push_back(x0);
  double next_sample = t0 + settings.dense_output_interval;

  Vec14 k2, k3, k4, k5, k6, k7, ynew, yerr;
  while (t < t1) {
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw NumericalError(
          "step size underflow at t = " + std::to_string(t) +
          " (possible stiffness)");
    }
    const bool last = (t + h >= t1);
    if (last) h = t1 - t;

    // An oversized trial step can push a stage state far enough negative
    // that the field refuses it (total N or M <= 0); that counts as a
    // failed trial just like an overflow.
    bool stages_ok = true;
    double err = 0.0;
    try {
      k2 = rhs(y + h * (a21 * k1));
      k3 = rhs(y + h * (a31 * k1 + a32 * k2));
      k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      k7 = rhs(ynew);
    } catch (const ValidationError&) {
      stages_ok = false;
    }
    traj.meta.rhs_evals += 6;

    if (stages_ok) {
      yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      for (int i = 0; i < idx::count; ++i) {
        const double sc =
            atol + rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
        err += (yerr(i) / sc) * (yerr(i) / sc);
      }
      err = std::sqrt(err / idx::count);
    }

    const bool finite = stages_ok && std::isfinite(err) && ynew.allFinite();
    if (finite && err <= 1.0) {
      // Accept. Build the dense segment before advancing.
      DenseSegment seg;
      seg.t0 = t;
      seg.h = h;
      const Vec14 ydiff = ynew - y;
      const Vec14 bspl = h * k1 - ydiff;
      seg.r1 = y;
      seg.r2 = ydiff;
      seg.r3 = bspl;
      seg.r4 = ydiff - h * k7 - bspl;
      seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

      const double t_new = last ? t1 : t + h;
      while (next_sample < t_new - 1e-12 * std::max(1.0, std::abs(t_new))) {
        traj.times.push_back(next_sample);
        traj.states.push_back(
            clamped_state(seg.eval(next_sample), "dense output"));
        next_sample += settings.dense_output_interval;
      }

      t = t_new;
      y = ynew;
      const State accepted = clamped_state(y, "integration step");
      y = accepted.to_vec();
      k1 = k7;  // first-same-as-last
      traj.meta.steps++;

      if (t >= t1) {
        traj.times.push_back(t1);
        traj.states.push_back(accepted);
        break;
      }
      const double fac =
          (err > 0.0) ? 0.9 * std::pow(err, -0.2)
                      : 10.0;
      h = h * std::clamp(fac, 0.2, 10.0);
      h = std::min(h, hmax);
    } else {
      traj.meta.rejects++;
      if (!finite) {
        // Overflow from an oversized trial step: shrink hard and retry.
        h *= 0.2;
      } else {
        const double fac = 0.9 * std::pow(err, -0.2);
        h = h * std::clamp(fac, 0.2, 1.0);
      }
    }
  }
  return traj;
}

SettleResult settle(const State& x0, const ParameterSet& p, double tol,
                    double t_max, const SolverSettings& settings) {
  p.validate();
  x0.validate();
  if (!(tol > 0.0)) throw ValidationError("settle tolerance must be positive");
  if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");

  // Attempt the Newton polish once the field is this small; the polish is
  // only accepted if it moves the state a little (so slow transients far
  // from any root are not snapped to the wrong equilibrium).
  const double attempt_threshold = std::max(tol, 1e-4 * p.lambda_N);
  const double human_scale = p.lambda_N / p.mu;
  const double vector_scale = p.lambda_M / p.kappa;

  // A trajectory can fly close past an unstable focus on its way out to a
  // cycle; snapping there would report an equilibrium the flow never
  // reaches. Accept an unstable candidate only when the remaining
  // deviation has no component along its unstable eigendirections (the
  // case of convergence inside an invariant subspace, where the unstable
  // directions point out of the subspace). The test is absolute, in
  // population-scaled units: a genuine flyby carries a finite unstable
  // component well before it becomes the dominant part of the deviation,
  // while in-subspace convergence leaves only solver round-off there.
  auto avoids_unstable_subspace = [&](const EquilibriumRecord& rec,
                                      const State& s) -> bool {
    CVec14 delta_hat;
    for (int i = 0; i < idx::count; ++i) {
      const double scale = (i < idx::human_count) ? human_scale : vector_scale;
      delta_hat(i) = (s[i] - rec.state[i]) / scale;
    }
    if (delta_hat.norm() == 0.0) return true;

    Eigen::EigenSolver<Mat14> es(jacobian(rec.state, p));
    if (es.info() != Eigen::Success) return false;
    Eigen::Matrix<std::complex<double>, idx::count, idx::count> basis =
        es.eigenvectors();
    bool any_unstable = false;
    for (int j = 0; j < idx::count; ++j) {
      for (int i = 0; i < idx::count; ++i) {
        const double scale =
            (i < idx::human_count) ? human_scale : vector_scale;
        basis(i, j) /= scale;
      }
      basis.col(j).normalize();
      if (es.eigenvalues()(j).real() > kStabilityMargin) any_unstable = true;
    }
    if (!any_unstable) return true;

    const CVec14 coefficients = basis.fullPivLu().solve(delta_hat);
    CVec14 unstable_part = CVec14::Zero();
    for (int j = 0; j < idx::count; ++j) {
      if (es.eigenvalues()(j).real() > kStabilityMargin) {
        unstable_part += coefficients(j) * basis.col(j);
      }
    }
    return unstable_part.norm() <= 1e-10;
  };

  auto try_polish = [&](const State& s, double t_now,
                        SettleResult& out) -> bool {
    EquilibriumRecord rec;
    try {
      rec = refine_equilibrium(s, p, tol);
    } catch (const NumericalError&) {
      return false;
    }
    for (int i = 0; i < idx::count; ++i) {
      const double scale = (i < idx::human_count) ? human_scale : vector_scale;
      if (std::abs(rec.state[i] - s[i]) > 2e-3 * scale) return false;
    }
    if (!rec.stable && !avoids_unstable_subspace(rec, s)) return false;
    out.settled = true;
    out.t_end = t_now;
    out.record = rec;
    return true;
  };

  SettleResult result;
  State s = x0;
  double t = 0.0;
  if (vector_field(s, p).max_abs() < attempt_threshold &&
      try_polish(s, 0.0, result)) {
    return result;
  }

  const double chunk = 250.0;
  SolverSettings chunk_settings = settings;
  chunk_settings.dense_output_interval = 1.0;
  Trajectory last_chunk;
  while (t < t_max) {
    const double t_next = std::min(t + chunk, t_max);
    last_chunk = integrate(s, p, t, t_next, chunk_settings);
    s = last_chunk.states.back();
    t = t_next;
    if (vector_field(s, p).max_abs() < attempt_threshold &&
        try_polish(s, t, result)) {
      return result;
    }
  }

  // Timeout: flag sustained oscillation of the total infectious count over
  // the last chunk.
  result.settled = false;
  result.t_end = t;
  if (!last_chunk.states.empty()) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const State& st : last_chunk.states) {
      const double itot =
          st[idx::I1] + st[idx::I2] + st[idx::I12] + st[idx::I21];
      lo = std::min(lo, itot);
      hi = std::max(hi, itot);
    }
    result.oscillation_suspected = (hi - lo) > 1e-3;
  }
  return result;
}

BoundsReport long_time_bounds_check(const Trajectory& traj,
                                    const ParameterSet& p) {
  if (traj.times.size() < 2) {
    throw ValidationError("trajectory too short for a bounds check");
  }
  const double span = traj.times.back() - traj.times.front();
  const double needed = 10.0 / std::min(p.mu, p.kappa);
  if (span < needed) {
    throw ValidationError(
        "bounds check needs a span of at least 10/min(mu, kappa) = " +
        std::to_string(needed) + " months; got " + std::to_string(span));
  }

  const double t_half = traj.times.front() + 0.5 * span;
  const double n_cap = p.lambda_N / p.mu;
  const double m_cap = p.lambda_M / p.kappa;
  const double slack = 1e-6;

  BoundsReport report;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < t_half) continue;
    const double n_excess = traj.states[i].human_total() / n_cap - 1.0;
    const double m_excess = traj.states[i].vector_total() / m_cap - 1.0;
    report.max_human_excess = std::max(report.max_human_excess, n_excess);
    report.max_vector_excess = std::max(report.max_vector_excess, m_excess);
    if (n_excess > slack) {
      report.ok = false;
      report.violations.push_back(
          "N exceeds lambda_N/mu at t = " + std::to_string(traj.times[i]) +
          " by relative " + std::to_string(n_excess));
    }
    if (m_excess > slack) {
      report.ok = false;
      report.violations.push_back(
          "M exceeds lambda_M/kappa at t = " + std::to_string(traj.times[i]) +
          " by relative " + std::to_string(m_excess));
    }
  }
  return report;
}

}  // namespace dengue

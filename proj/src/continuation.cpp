#include "dengue/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace dengue {

void ContinuationSettings::validate() const {
  if (!(initial_step > 0.0) || !(min_step > 0.0) || !(max_step > 0.0)) {
    throw ValidationError("continuation step sizes must be positive");
  }
  if (min_step > max_step) {
    throw ValidationError("continuation min_step must not exceed max_step");
  }
  if (max_steps < 1) throw ValidationError("max_steps must be >= 1");
  if (max_newton_iters < 1 || max_halvings < 0) {
    throw ValidationError("invalid continuation iteration limits");
  }
  if (!(event_param_tol > 0.0)) {
    throw ValidationError("event_param_tol must be positive");
  }
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::branch_point:
      return "branch_point";
    case EventKind::hopf:
      return "hopf";
    case EventKind::fold:
      return "fold";
  }
  return "?";
}

namespace {
// Eigenvalues with |Im| below this are treated as real. The semisimple
// double eigenvalues of the symmetric model split only at round-off level,
// far below a genuine Hopf pair's frequency.
constexpr double kImagThreshold = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TestFunctionValues test_functions(const EquilibriumRecord& eq) {
  TestFunctionValues tv;
  tv.real_eig_max = -kInf;
  tv.complex_pair_max_real = -kInf;
  for (int i = 0; i < idx::count; ++i) {
    const auto lam = eq.eigenvalues(i);
    if (std::abs(lam.imag()) <= kImagThreshold) {
      tv.real_eig_max = std::max(tv.real_eig_max, lam.real());
    } else {
      tv.complex_pair_max_real =
          std::max(tv.complex_pair_max_real, lam.real());
    }
  }
  return tv;
}

namespace {

using Vec15 = Eigen::Matrix<double, 15, 1>;
using Mat15 = Eigen::Matrix<double, 15, 15>;

// Equilibrium path-following problem: z = (state, lambda) with a weighted
// norm that puts human and vector compartments on comparable scales.
struct PathProblem {
  ParameterSet base;
  FreeParam fp;
  Vec14 scales;
  double tol = 0.0;

  PathProblem(const ParameterSet& p, FreeParam f, double tol_) {
    base = p;
    fp = f;
    tol = tol_;
    const double hs = p.lambda_N / p.mu;
    const double vs = p.lambda_M / p.kappa;
    for (int i = 0; i < idx::count; ++i) {
      scales(i) = (i < idx::human_count) ? hs : vs;
    }
  }

  ParameterSet at(double lam) const {
    ParameterSet q = base;
    set_param(q, fp, lam);
    return q;
  }
  Vec14 f(const Vec14& u, double lam) const {
    return vector_field(State::from_vec(u), at(lam)).to_vec();
  }
  Mat14 jac(const Vec14& u, double lam) const {
    return jacobian(State::from_vec(u), at(lam));
  }
  Vec14 flam(const Vec14& u, double lam) const {
    return parameter_derivative(State::from_vec(u), at(lam), fp);
  }

  double dot(const Vec15& a, const Vec15& b) const {
    double s = a(14) * b(14);
    for (int i = 0; i < idx::count; ++i) {
      s += a(i) * b(i) / (scales(i) * scales(i));
    }
    return s;
  }
  double norm(const Vec15& a) const { return std::sqrt(dot(a, a)); }

  EquilibriumRecord record_at(const Vec15& z) const {
    EquilibriumRecord rec;
    rec.state = State::from_vec(z.head<14>());
    const ParameterSet q = at(z(14));
    rec.residual_norm = vector_field(rec.state, q).max_abs();
    rec.kind = classify_kind(rec.state, q);
    classify_stability(rec, q);
    return rec;
  }
};

// Newton corrector on {f(u, lambda) = 0, <tau, z - z_pred>_W = 0}.
bool correct(const PathProblem& P, const Vec15& tau, const Vec15& z_pred,
             int max_iters, Vec15& z_out) {
  Vec15 z = z_pred;
  for (int it = 0; it < max_iters; ++it) {
    Vec14 fv;
    try {
      fv = P.f(z.head<14>(), z(14));
    } catch (const ValidationError&) {
      return false;  // wandered into N <= 0 or M <= 0
    }
    const double hres = P.dot(tau, z - z_pred);
    if (fv.cwiseAbs().maxCoeff() < P.tol && std::abs(hres) < 1e-9) {
      z_out = z;
      return true;
    }
    Mat15 A = Mat15::Zero();
    A.topLeftCorner<14, 14>() = P.jac(z.head<14>(), z(14));
    A.topRightCorner<14, 1>() = P.flam(z.head<14>(), z(14));
    for (int i = 0; i < idx::count; ++i) {
      A(14, i) = tau(i) / (P.scales(i) * P.scales(i));
    }
    A(14, 14) = tau(14);
    Vec15 rhs;
    rhs.head<14>() = -fv;
    rhs(14) = -hres;
    Eigen::FullPivLU<Mat15> lu(A);
    if (!lu.isInvertible()) return false;
    const Vec15 dz = lu.solve(rhs);
    if (!dz.allFinite()) return false;
    z += dz;
  }
  Vec14 fv;
  try {
    fv = P.f(z.head<14>(), z(14));
  } catch (const ValidationError&) {
    return false;
  }
  if (fv.cwiseAbs().maxCoeff() < P.tol) {
    z_out = z;
    return true;
  }
  return false;
}

// Branch tangent from the bordered system, oriented along tau_prev.
bool tangent(const PathProblem& P, const Vec15& tau_prev, const Vec15& z,
             Vec15& tau_out) {
  Mat15 A = Mat15::Zero();
  A.topLeftCorner<14, 14>() = P.jac(z.head<14>(), z(14));
  A.topRightCorner<14, 1>() = P.flam(z.head<14>(), z(14));
  for (int i = 0; i < idx::count; ++i) {
    A(14, i) = tau_prev(i) / (P.scales(i) * P.scales(i));
  }
  A(14, 14) = tau_prev(14);
  Vec15 rhs = Vec15::Zero();
  rhs(14) = 1.0;
  Eigen::FullPivLU<Mat15> lu(A);
  if (!lu.isInvertible()) return false;
  Vec15 t = lu.solve(rhs);
  if (!t.allFinite()) return false;
  const double n = P.norm(t);
  if (!(n > 0.0)) return false;
  tau_out = t / n;
  return true;
}

// Damped Newton at fixed parameter value.
bool solve_at_param(const PathProblem& P, double lam, const Vec14& guess,
                    Vec14& out) {
  Vec14 u = guess;
  auto resid = [&](const Vec14& v, double& rn) {
    try {
      rn = P.f(v, lam).cwiseAbs().maxCoeff();
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  };
  double res;
  if (!resid(u, res)) return false;
  for (int it = 0; it < 25; ++it) {
    if (res < P.tol) {
      out = u;
      return true;
    }
    Eigen::FullPivLU<Mat14> lu(P.jac(u, lam));
    if (!lu.isInvertible()) return false;
    const Vec14 du = lu.solve(-P.f(u, lam));
    if (!du.allFinite()) return false;
    double step = 1.0;
    bool accepted = false;
    for (int half = 0; half < 20; ++half) {
      const Vec14 un = u + step * du;
      double rn;
      if (resid(un, rn) && (rn < res || step < 1e-4)) {
        u = un;
        res = rn;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return false;
  }
  if (res < P.tol) {
    out = u;
    return true;
  }
  return false;
}

struct TestedPoint {
  Vec15 z;
  EquilibriumRecord rec;
  TestFunctionValues tv;
};

TestedPoint tested_point(const PathProblem& P, const Vec15& z) {
  TestedPoint tp;
  tp.z = z;
  tp.rec = P.record_at(z);
  tp.tv = test_functions(tp.rec);
  return tp;
}

bool sign_change(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return (a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0);
}

// Bisection in arclength between two tested points straddling a zero of the
// chosen test function; works through folds, where bisection in the bare
// parameter would not.
bool refine_event(const PathProblem& P, TestedPoint a, TestedPoint b,
                  bool hopf_test, const ContinuationSettings& settings,
                  FreeParam fp, BifurcationEvent& ev_out) {
  auto value = [&](const TestedPoint& tp) {
    return hopf_test ? tp.tv.complex_pair_max_real : tp.tv.real_eig_max;
  };
  const double va0 = value(a), vb0 = value(b);
  for (int it = 0; it < 90; ++it) {
    if (P.norm(b.z - a.z) <= settings.event_param_tol) break;
    Vec15 tau = b.z - a.z;
    const double n = P.norm(tau);
    if (!(n > 0.0)) break;
    tau /= n;
    const Vec15 z_pred = 0.5 * (a.z + b.z);
    Vec15 zm;
    if (!correct(P, tau, z_pred, settings.max_newton_iters + 4, zm)) {
      return false;
    }
    const TestedPoint m = tested_point(P, zm);
    const double vm = value(m);
    if (!std::isfinite(vm)) return false;
    if (sign_change(value(a), vm)) {
      b = m;
    } else {
      a = m;
    }
  }

  // Final event data at the midpoint of the last bracket.
  const TestedPoint* best = std::abs(value(a)) < std::abs(value(b)) ? &a : &b;
  const TestFunctionValues tv = best->tv;

  if (hopf_test) {
    // Guard against refining onto a discontinuity of the test function.
    if (std::abs(tv.complex_pair_max_real) > 1e-6) return false;
    double omega = 0.0;
    double re_best = -kInf;
    for (int i = 0; i < idx::count; ++i) {
      const auto lam = best->rec.eigenvalues(i);
      if (std::abs(lam.imag()) > kImagThreshold && lam.real() > re_best) {
        re_best = lam.real();
        omega = std::abs(lam.imag());
      }
    }
    if (!(omega > 1e-6)) return false;
    ev_out.kind = EventKind::hopf;
    ev_out.imag_pair = omega;
  } else {
    if (std::abs(tv.real_eig_max) > 1e-6) return false;
    // Tangent test on the final bracket secant: at a fold the branch turns,
    // so the parameter component of the secant collapses relative to its
    // weighted length; at a branch point it stays O(1).
    const Vec15 d = b.z - a.z;
    const double dn = P.norm(d);
    const double ratio = dn > 0.0 ? std::abs(d(14)) / dn : 1.0;
    ev_out.kind = ratio < 1e-3 ? EventKind::fold : EventKind::branch_point;
    ev_out.imag_pair = 0.0;
  }
  ev_out.param_name = fp;
  ev_out.param_value = best->z(14);
  ev_out.state = best->rec.state;
  ev_out.test_values = {va0, vb0};
  return true;
}

struct HalfBranch {
  std::vector<EquilibriumRecord> points;
  std::vector<double> params;
  std::vector<BifurcationEvent> events;
};

// A degenerate eigenvalue pair can flutter between the real and complex
// buckets from one step to the next, making the discretized test functions
// cross zero more than once around a single bifurcation.  Collapse refined
// events of the same kind that land within a hair of each other.
void push_event_deduplicated(std::vector<BifurcationEvent>& events,
                             const BifurcationEvent& ev) {
  const double tol = 1e-6 * std::max(1.0, std::abs(ev.param_value));
  for (const BifurcationEvent& have : events) {
    if (have.kind == ev.kind &&
        std::abs(have.param_value - ev.param_value) <= tol) {
      return;
    }
  }
  events.push_back(ev);
}

void check_events(const PathProblem& P, const TestedPoint& prev,
                  const TestedPoint& cur, const ContinuationSettings& settings,
                  FreeParam fp, std::vector<BifurcationEvent>& events) {
  if (sign_change(prev.tv.real_eig_max, cur.tv.real_eig_max)) {
    BifurcationEvent ev;
    if (refine_event(P, prev, cur, /*hopf=*/false, settings, fp, ev)) {
      push_event_deduplicated(events, ev);
    }
  }
  if (sign_change(prev.tv.complex_pair_max_real,
                  cur.tv.complex_pair_max_real)) {
    BifurcationEvent ev;
    if (refine_event(P, prev, cur, /*hopf=*/true, settings, fp, ev)) {
      push_event_deduplicated(events, ev);
    }
  }
}

HalfBranch run_direction(const PathProblem& P, const Vec15& z0, int dir,
                         double lo, double hi,
                         const ContinuationSettings& settings, FreeParam fp) {
  HalfBranch out;

  // Natural-parameterization initial tangent.
  Vec15 tau;
  {
    Eigen::FullPivLU<Mat14> lu(P.jac(z0.head<14>(), z0(14)));
    if (!lu.isInvertible()) {
      throw NumericalError(
          "cannot start continuation at a singular equilibrium");
    }
    const Vec14 du = lu.solve(-P.flam(z0.head<14>(), z0(14)));
    tau.head<14>() = du;
    tau(14) = 1.0;
    tau /= P.norm(tau);
    if (tau(14) * dir < 0) tau = -tau;
  }

  TestedPoint cur = tested_point(P, z0);
  out.points.push_back(cur.rec);
  out.params.push_back(z0(14));

  double h = settings.initial_step;
  for (int step = 0; step < settings.max_steps; ++step) {
    Vec15 znew;
    bool ok = false;
    int halvings = 0;
    int newton_budget_used = 0;
    while (true) {
      const Vec15 z_pred = cur.z + h * tau;
      if (correct(P, tau, z_pred, settings.max_newton_iters, znew)) {
        ok = true;
        break;
      }
      ++halvings;
      ++newton_budget_used;
      h *= 0.5;
      if (h < settings.min_step || halvings > settings.max_halvings) break;
    }
    if (!ok) {
      throw NumericalError(
          "continuation step failed after halvings near " +
          std::string(to_string(fp)) + " = " + std::to_string(cur.z(14)));
    }
    (void)newton_budget_used;

    if (znew(14) > hi || znew(14) < lo) {
      // Land exactly on the boundary and stop.
      const double lam_b = znew(14) > hi ? hi : lo;
      const double denom = znew(14) - cur.z(14);
      const double frac =
          std::abs(denom) > 0.0 ? (lam_b - cur.z(14)) / denom : 0.0;
      const Vec14 guess =
          cur.z.head<14>() + frac * (znew.head<14>() - cur.z.head<14>());
      Vec14 ub;
      if (solve_at_param(P, lam_b, guess, ub)) {
        Vec15 zb;
        zb.head<14>() = ub;
        zb(14) = lam_b;
        const TestedPoint bp = tested_point(P, zb);
        check_events(P, cur, bp, settings, fp, out.events);
        out.points.push_back(bp.rec);
        out.params.push_back(lam_b);
      }
      break;
    }

    const TestedPoint next = tested_point(P, znew);
    check_events(P, cur, next, settings, fp, out.events);

    // Equilibria more than a trace below the nonnegative cone are outside the
    // model's domain; stop following such a leg instead of spending the step
    // budget on it (some nonphysical legs run into vertical asymptotes).
    bool out_of_domain = false;
    for (int i = 0; i < idx::count; ++i) {
      if (znew(i) < -1e-5 * P.scales(i)) {
        out_of_domain = true;
        break;
      }
    }
    if (out_of_domain) break;

    out.points.push_back(next.rec);
    out.params.push_back(znew(14));

    Vec15 tau_new;
    if (tangent(P, tau, znew, tau_new)) {
      tau = tau_new;
    } else {
      Vec15 sec = znew - cur.z;
      const double n = P.norm(sec);
      if (n > 0.0) tau = sec / n;
    }
    cur = next;
    if (halvings == 0) h = std::min(h * 1.3, settings.max_step);
  }
  return out;
}

}  // namespace

Branch continue_equilibria(const EquilibriumRecord& start,
                           const ParameterSet& params, FreeParam free_param,
                           std::array<double, 2> range,
                           const ContinuationSettings& settings) {
  params.validate();
  settings.validate();
  const double lo = range[0], hi = range[1];
  if (!(hi > lo)) throw ValidationError("continuation range must have hi > lo");
  const double lam0 = get_param(params, free_param);
  if (lam0 < lo || lam0 > hi) {
    throw ValidationError(
        "starting parameter value lies outside the continuation range");
  }
  const double tol = settings.corrector_tol > 0.0
                         ? settings.corrector_tol
                         : default_equilibrium_tol(params);
  PathProblem P(params, free_param, tol);

  Vec15 z0;
  z0.head<14>() = start.state.to_vec();
  z0(14) = lam0;
  if (P.f(z0.head<14>(), lam0).cwiseAbs().maxCoeff() >= tol) {
    Vec14 fixed;
    if (!solve_at_param(P, lam0, z0.head<14>(), fixed)) {
      throw ValidationError(
          "continuation start is not an equilibrium at tolerance");
    }
    z0.head<14>() = fixed;
  }

  Branch branch;
  HalfBranch down, up;
  if (lam0 > lo) {
    down = run_direction(P, z0, -1, lo, hi, settings, free_param);
  }
  if (lam0 < hi) {
    up = run_direction(P, z0, +1, lo, hi, settings, free_param);
  }

  // Stitch: downward half reversed (excluding the shared start), then the
  // upward half; the result is ordered by arclength from the low end.
  if (!down.points.empty()) {
    for (std::size_t i = down.points.size(); i-- > 1;) {
      branch.points.push_back(down.points[i]);
      branch.param_values.push_back(down.params[i]);
    }
  }
  if (!up.points.empty()) {
    branch.points.insert(branch.points.end(), up.points.begin(),
                         up.points.end());
    branch.param_values.insert(branch.param_values.end(), up.params.begin(),
                               up.params.end());
  } else if (!down.points.empty()) {
    branch.points.push_back(down.points[0]);
    branch.param_values.push_back(down.params[0]);
  }

  branch.events = down.events;
  std::reverse(branch.events.begin(), branch.events.end());
  branch.events.insert(branch.events.end(), up.events.begin(),
                       up.events.end());
  return branch;
}

std::vector<EquilibriumRecord> switch_branch(
    const BifurcationEvent& bp, const ParameterSet& params,
    double param_offset, const ContinuationSettings& settings) {
  params.validate();
  settings.validate();
  if (bp.kind != EventKind::branch_point) {
    throw ValidationError("switch_branch requires a branch_point event");
  }
  if (param_offset == 0.0) {
    throw ValidationError("param_offset must be nonzero");
  }
  const double tol = settings.corrector_tol > 0.0
                         ? settings.corrector_tol
                         : default_equilibrium_tol(params);
  PathProblem P(params, bp.param_name, tol);
  const Vec14 u_bp = bp.state.to_vec();
  const double lam_bp = bp.param_value;
  const double lam_new = lam_bp + param_offset;

  const Mat14 J = P.jac(u_bp, lam_bp);
  Eigen::JacobiSVD<Mat14> svd(J, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double null_tol = 1e-6 * sv(0);
  int corank = 0;
  for (int i = 0; i < idx::count; ++i) {
    if (sv(i) < null_tol) ++corank;
  }
  if (corank == 0) {
    throw NumericalError("no null direction at the branch point");
  }

  std::vector<Vec14> directions;
  if (corank >= 2) {
    // Strain-symmetric double zero: split the kernel into the symmetric
    // direction and the two single-strain directions.
    const Vec14 n1 = svd.matrixV().col(idx::count - 1);
    const Vec14 n2 = svd.matrixV().col(idx::count - 2);
    // coefficients minimizing the strain-2 block => strain-1-only member
    const int sel[5] = {idx::I2, idx::R2, idx::S2, idx::I21, idx::V2};
    Eigen::Matrix<double, 5, 2> Bsel;
    for (int r = 0; r < 5; ++r) {
      Bsel(r, 0) = n1(sel[r]);
      Bsel(r, 1) = n2(sel[r]);
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 2>> bsvd(Bsel,
                                                       Eigen::ComputeFullV);
    const Eigen::Vector2d c = bsvd.matrixV().col(1);
    const Vec14 d1 = c(0) * n1 + c(1) * n2;
    const Vec14 d2 = strain_swap(d1);
    Vec14 ds = d1 + d2;
    if (ds.cwiseAbs().maxCoeff() < 1e-8) ds = d1 - d2;
    directions = {ds, d1, d2};
  } else {
    // Simple branch point: both crossing tangents from the algebraic
    // branching equation in the two null directions of [J | f_lambda].
    Eigen::Matrix<double, 14, 15> Jz;
    Jz.leftCols<14>() = J;
    Jz.col(14) = P.flam(u_bp, lam_bp);
    Eigen::JacobiSVD<Eigen::Matrix<double, 14, 15>> zsvd(
        Jz, Eigen::ComputeFullV | Eigen::ComputeFullU);
    const Vec15 t1 = zsvd.matrixV().col(14);
    const Vec15 t2 = zsvd.matrixV().col(13);
    const Vec14 psi = zsvd.matrixU().col(13);  // left null vector of Jz

    auto second_dir = [&](const Vec15& dz) {
      // Directional step scaled to the compartment magnitudes so the
      // difference quotient stays well conditioned.
      const double hstep =
          1e-4 * std::max(1.0, u_bp.cwiseAbs().maxCoeff()) /
          std::max(1.0, dz.cwiseAbs().maxCoeff());
      Vec15 zp;
      zp.head<14>() = u_bp;
      zp(14) = lam_bp;
      const Vec15 za = zp + hstep * dz;
      const Vec15 zb = zp - hstep * dz;
      const Vec14 fa = P.f(za.head<14>(), za(14));
      const Vec14 fb = P.f(zb.head<14>(), zb(14));
      const Vec14 f0 = P.f(zp.head<14>(), zp(14));
      return Vec14(((fa - 2.0 * f0 + fb) / (hstep * hstep)).eval());
    };
    const double q11 = psi.dot(second_dir(t1));
    const double q22 = psi.dot(second_dir(t2));
    const double qpp = psi.dot(second_dir(t1 + t2));
    const double q12 = 0.5 * (qpp - q11 - q22);
    // roots of q11 a^2 + 2 q12 a b + q22 b^2 = 0 with (a, b) tangent coords
    std::vector<Eigen::Vector2d> coefs;
    const double disc = q12 * q12 - q11 * q22;
    if (disc >= 0.0 && (std::abs(q11) > 0.0 || std::abs(q12) > 0.0)) {
      const double root = std::sqrt(std::max(disc, 0.0));
      if (std::abs(q11) > 1e-14 * (std::abs(q12) + std::abs(q22))) {
        coefs.push_back({(-q12 + root) / q11, 1.0});
        coefs.push_back({(-q12 - root) / q11, 1.0});
      } else {
        coefs.push_back({1.0, 0.0});
        if (std::abs(q22) > 0.0) coefs.push_back({-q22 / (2.0 * q12), 1.0});
      }
    } else {
      coefs.push_back({1.0, 0.0});
      coefs.push_back({0.0, 1.0});
    }
    for (const auto& c : coefs) {
      const Vec15 t = c(0) * t1 + c(1) * t2;
      directions.push_back(t.head<14>());
    }
  }

  // Newton-land on each candidate branch at lam_new; keep distinct hits.
  std::vector<EquilibriumRecord> found;
  const double dedup_dist = 1e-6;
  auto weighted_dist = [&](const Vec14& a, const Vec14& b) {
    double s = 0.0;
    for (int i = 0; i < idx::count; ++i) {
      const double d = (a(i) - b(i)) / P.scales(i);
      s += d * d;
    }
    return std::sqrt(s);
  };

  for (const Vec14& d_raw : directions) {
    // Normalize the direction in the weighted norm.
    double dn = 0.0;
    for (int i = 0; i < idx::count; ++i) {
      const double v = d_raw(i) / P.scales(i);
      dn += v * v;
    }
    dn = std::sqrt(dn);
    if (!(dn > 0.0)) continue;
    for (const double sign : {+1.0, -1.0}) {
      const Vec14 d = sign / dn * d_raw;
      // The branch slope in weighted units is unknown, so try a ladder of
      // predictor amplitudes and keep whatever distinct roots they reach.
      for (const double amp : {10.0, 5.0, 2.5, 1.0, 0.4, 0.1}) {
        const double c = amp * std::abs(param_offset);
        Vec14 landed;
        if (!solve_at_param(P, lam_new, u_bp + c * d, landed)) continue;
        // Drop unphysical mirror roots (transcritical continuations into
        // negative compartments); tolerate round-off-level undershoot.
        bool physical = true;
        for (int i = 0; i < idx::count; ++i) {
          if (landed(i) < -1e-6 * P.scales(i)) {
            physical = false;
            break;
          }
        }
        if (!physical) continue;
        bool duplicate = weighted_dist(landed, u_bp) < dedup_dist;
        for (const auto& rec : found) {
          if (weighted_dist(landed, rec.state.to_vec()) < dedup_dist) {
            duplicate = true;
            break;
          }
        }
        if (duplicate) continue;
        Vec15 z;
        z.head<14>() = landed;
        z(14) = lam_new;
        found.push_back(P.record_at(z));
      }
    }
  }
  return found;
}

}  // namespace dengue

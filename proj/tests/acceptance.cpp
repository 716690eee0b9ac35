// Acceptance harness: nine numbered criteria covering threshold detection,
// oscillation onset, the periodic-orbit family, bistability, the
// reproduction-number stability gate, closed-form equilibria, criticality of
// the transcritical crossing, Jacobian fidelity, and structural properties
// of the flow.  Each criterion prints exactly one [PASS]/[FAIL] line with
// the measured values and its runtime; the process exits nonzero if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dengue/center_manifold.hpp"
#include "dengue/continuation.hpp"
#include "dengue/equilibria.hpp"
#include "dengue/integrate.hpp"
#include "dengue/model.hpp"
#include "dengue/orbits.hpp"
#include "dengue/params.hpp"
#include "dengue/state.hpp"

using namespace dengue;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int number, const char* name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %d. %-34s %s\n", pass ? "PASS" : "FAIL", number, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

// Parameter draws across the documented table ranges, keeping the population
// scales fixed so tolerances stay comparable between draws.
ParameterSet random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
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
  return p;
}

State random_interior_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> human(0.1, 2000.0);
  std::uniform_real_distribution<double> big(5000.0, 9000.0);
  std::uniform_real_distribution<double> vec_u(1e4, 1e5);
  std::uniform_real_distribution<double> vec_v(10.0, 5000.0);
  State s;
  s.x[idx::S] = big(rng);
  for (int i = 1; i < idx::human_count; ++i) s.x[i] = human(rng);
  s.x[idx::U] = vec_u(rng);
  s.x[idx::V1] = vec_v(rng);
  s.x[idx::V2] = vec_v(rng);
  s.x[idx::V12] = vec_v(rng);
  return s;
}

// The two starting populations used throughout the scenario files: a
// two-strain seeding and a single-strain seeding of the same totals.
State two_strain_start() {
  State s;
  s.x[idx::S] = 9000.0;
  s.x[idx::I1] = 20.0;
  s.x[idx::I2] = 20.0;
  s.x[idx::R] = 960.0;
  s.x[idx::U] = 99000.0;
  s.x[idx::V1] = 500.0;
  s.x[idx::V2] = 500.0;
  return s;
}

State one_strain_start() {
  State s;
  s.x[idx::S] = 9980.0;
  s.x[idx::I1] = 20.0;
  s.x[idx::U] = 99500.0;
  s.x[idx::V1] = 500.0;
  return s;
}

double residual_inf_norm(const State& s, const ParameterSet& p) {
  const Derivative f = vector_field(s, p);
  double r = 0.0;
  for (int i = 0; i < idx::count; ++i) r = std::max(r, std::abs(f[i]));
  return r;
}

const BifurcationEvent* first_event(const Branch& br, EventKind kind) {
  for (const BifurcationEvent& ev : br.events) {
    if (ev.kind == kind) return &ev;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

void criterion_1_branch_point() {
  const auto t0 = Clock::now();
  ParameterSet p;
  const Branch br = continue_equilibria(disease_free_equilibrium(p), p,
                                        FreeParam::alpha, {0.1, 0.75});
  const BifurcationEvent* bp = first_event(br, EventKind::branch_point);
  const double elapsed = seconds_since(t0);
  if (bp == nullptr) {
    report(1, "transcritical branch point", false,
           fmt("no branch point detected on the disease-free line (%.1f s)",
               elapsed));
    return;
  }
  const double err = std::abs(bp->param_value - 0.33355);
  const bool pass = err <= 1e-3 && elapsed < 30.0;
  report(1, "transcritical branch point", pass,
         fmt("alpha = %.9f, |alpha - 0.33355| = %.2e (tol 1e-3), %.2f s "
             "(cap 30 s)",
             bp->param_value, err, elapsed));
}

const BifurcationEvent* criterion_2_hopf(BifurcationEvent& storage) {
  const auto t0 = Clock::now();
  ParameterSet p;
  const Branch br = continue_equilibria(two_strain_symmetric_equilibrium(p), p,
                                        FreeParam::alpha, {0.1, 0.75});
  const BifurcationEvent* hopf = first_event(br, EventKind::hopf);
  const double elapsed = seconds_since(t0);
  if (hopf == nullptr) {
    report(2, "oscillation onset (Hopf)", false,
           fmt("no Hopf event on the coexistence branch (%.1f s)", elapsed));
    return nullptr;
  }
  const double err = std::abs(hopf->param_value - 0.50012);
  const bool pass = err <= 1e-2 && elapsed < 120.0;
  report(2, "oscillation onset (Hopf)", pass,
         fmt("alpha = %.9f, |alpha - 0.50012| = %.2e (tol 1e-2), %.2f s "
             "(cap 120 s)",
             hopf->param_value, err, elapsed));
  storage = *hopf;
  return &storage;
}

void criterion_3_orbit_family(const BifurcationEvent* hopf) {
  if (hopf == nullptr) {
    report(3, "periodic-orbit family", false,
           "skipped: no Hopf event to continue from");
    return;
  }
  const auto t0 = Clock::now();
  ParameterSet p;
  const std::vector<PeriodicOrbit> family =
      continue_periodic_orbits(*hopf, p, {0.529, 0.75});
  const double elapsed = seconds_since(t0);

  if (family.size() < 3) {
    report(3, "periodic-orbit family", false,
           fmt("only %zu orbits continued (%.1f s)", family.size(), elapsed));
    return;
  }
  std::vector<const PeriodicOrbit*> sorted;
  for (const PeriodicOrbit& orb : family) sorted.push_back(&orb);
  std::sort(sorted.begin(), sorted.end(),
            [](const PeriodicOrbit* a, const PeriodicOrbit* b) {
              return a->param_value < b->param_value;
            });

  const double lo = sorted.front()->param_value;
  const double hi = sorted.back()->param_value;
  const bool covers = lo <= 0.529 + 1e-6 && hi >= 0.75 - 1e-6;

  bool amplitude_increasing = true;
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (!(sorted[k]->amplitude > sorted[k - 1]->amplitude)) {
      amplitude_increasing = false;
      break;
    }
  }

  double worst_trivial = 0.0;
  for (const PeriodicOrbit& orb : family) {
    double best = 1e300;
    for (int i = 0; i < idx::count; ++i) {
      best = std::min(best, std::abs(orb.floquet(i) - 1.0));
    }
    worst_trivial = std::max(worst_trivial, best);
  }
  const bool floquet_ok = worst_trivial <= 1e-4;

  const bool pass =
      covers && amplitude_increasing && floquet_ok && elapsed < 600.0;
  report(3, "periodic-orbit family", pass,
         fmt("%zu orbits over [%.6f, %.6f], amplitude %s, trivial-multiplier "
             "error max %.2e (tol 1e-4), %.1f s (cap 600 s)",
             family.size(), lo, hi,
             amplitude_increasing ? "strictly increasing" : "NOT monotone",
             worst_trivial, elapsed));
}

void criterion_4_bistability() {
  const auto t0 = Clock::now();
  ParameterSet p;
  const double tol = default_equilibrium_tol(p);
  const SettleResult two = settle(two_strain_start(), p, tol, 60000.0);
  const SettleResult one = settle(one_strain_start(), p, tol, 60000.0);
  const double elapsed = seconds_since(t0);
  const double residual_cap = 1e-9 * p.lambda_N;

  const bool pass = two.settled && one.settled &&
                    two.record.kind == EquilibriumKind::two_strain_symmetric &&
                    one.record.kind == EquilibriumKind::one_strain_1 &&
                    two.record.residual_norm < residual_cap &&
                    one.record.residual_norm < residual_cap &&
                    elapsed < 60.0;
  const std::string two_kind(to_string(two.record.kind));
  const std::string one_kind(to_string(one.record.kind));
  report(4, "bistability of the two seedings", pass,
         fmt("%s (res %.1e) vs %s (res %.1e), residual cap %.1e, %.1f s "
             "(cap 60 s)",
             two_kind.c_str(), two.record.residual_norm, one_kind.c_str(),
             one.record.residual_norm, residual_cap, elapsed));
}

void criterion_5_r0_gate() {
  const auto t0 = Clock::now();
  std::mt19937 rng(501);
  std::uniform_real_distribution<double> alpha_draw(0.05, 1.5);
  int disagreements = 0;
  int inside_margin = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    ParameterSet p = random_params(rng);
    p.alpha = alpha_draw(rng);
    const double r = r0(p);
    if (std::abs(r - 1.0) < 1e-6) {
      ++inside_margin;
      continue;
    }
    const EquilibriumRecord dfe = disease_free_equilibrium(p);
    if (dfe.stable != (r < 1.0)) ++disagreements;
  }
  const double elapsed = seconds_since(t0);
  const bool pass = disagreements == 0;
  report(5, "reproduction-number gate", pass,
         fmt("1000 draws, %d disagreements (require 0), %d inside the "
             "|R0-1| < 1e-6 margin, %.1f s",
             disagreements, inside_margin, elapsed));
}

void criterion_6_closed_forms() {
  const auto t0 = Clock::now();
  std::mt19937 rng(601);
  std::uniform_real_distribution<double> r0_draw(1.05, 2.5);
  double worst = 0.0;  // residual relative to lambda_N
  for (int trial = 0; trial < 200; ++trial) {
    ParameterSet p = random_params(rng);
    const double target_r0 = r0_draw(rng);
    p.alpha = target_r0 * target_r0 * critical_alpha(p);

    const EquilibriumRecord e1 = one_strain_equilibrium(p, 1);
    const EquilibriumRecord e2 = one_strain_equilibrium(p, 2);
    worst = std::max(worst, residual_inf_norm(e1.state, p) / p.lambda_N);
    worst = std::max(worst, residual_inf_norm(e2.state, p) / p.lambda_N);

    ParameterSet q = p;
    q.delta = 0.0;
    const EquilibriumRecord e12 = two_strain_symmetric_equilibrium(q);
    worst = std::max(worst, residual_inf_norm(e12.state, q) / q.lambda_N);
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < 1e-9;
  report(6, "closed-form equilibria", pass,
         fmt("200 draws with R0 > 1, max residual %.2e x lambda_N "
             "(tol 1e-9), %.1f s",
             worst, elapsed));
}

void criterion_7_criticality() {
  const auto t0 = Clock::now();
  std::mt19937 rng(701);
  std::uniform_real_distribution<double> weight_draw(0.25, 4.0);
  int checked = 0;
  int sign_mismatches = 0;
  int b_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ParameterSet p = random_params(rng);
    CenterManifoldWeights w;
    w.w2 = weight_draw(rng);
    w.w3 = weight_draw(rng);
    w.v2 = weight_draw(rng);
    w.v3 = weight_draw(rng);

    const BifurcationCoefficients c = center_manifold_coefficients(p, w);
    const double astar = critical_alpha(p);
    const double ac = alpha_c(p, w);
    if (std::abs(astar - ac) < 1e-12 * std::max(astar, ac)) continue;
    ++checked;
    if ((c.a > 0.0) != (astar < ac)) ++sign_mismatches;
    if (!(c.b > 0.0)) ++b_failures;
  }
  const double elapsed = seconds_since(t0);
  const bool pass = sign_mismatches == 0 && b_failures == 0 && checked >= 990;
  report(7, "criticality sign test", pass,
         fmt("%d draws checked, %d sign mismatches, %d nonpositive b "
             "(require 0/0), %.1f s",
             checked, sign_mismatches, b_failures, elapsed));
}

void criterion_8_jacobian() {
  const auto t0 = Clock::now();
  std::mt19937 rng(801);
  std::uniform_real_distribution<double> alpha_draw(0.1, 1.2);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    ParameterSet p = random_params(rng);
    p.alpha = alpha_draw(rng);
    const State s = random_interior_state(rng);
    const Mat14 J = jacobian(s, p);
    Mat14 Jfd;
    for (int j = 0; j < idx::count; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(s.x[j]));
      State lo = s, hi = s;
      lo.x[j] -= h;
      hi.x[j] += h;
      const Derivative flo = vector_field(lo, p);
      const Derivative fhi = vector_field(hi, p);
      for (int i = 0; i < idx::count; ++i) {
        Jfd(i, j) = (fhi[i] - flo[i]) / (2.0 * h);
      }
    }
    const double scale = Jfd.cwiseAbs().maxCoeff();
    worst = std::max(worst, (J - Jfd).cwiseAbs().maxCoeff() / scale);
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < 1e-5;
  report(8, "Jacobian vs finite differences", pass,
         fmt("50 random interior states, max relative error %.2e "
             "(tol 1e-5), %.1f s",
             worst, elapsed));
}

void criterion_9_structure() {
  const auto t0 = Clock::now();
  std::ostringstream notes;
  bool pass = true;

  // Strain-swap equivariance of the vector field at random points.
  {
    std::mt19937 rng(901);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      ParameterSet p = random_params(rng);
      const State s = random_interior_state(rng);
      const Derivative lhs = vector_field(strain_swap(s), p);
      const Derivative rhs = strain_swap(vector_field(s, p));
      double scale = 1.0;
      for (int i = 0; i < idx::count; ++i) {
        scale = std::max(scale, std::abs(rhs[i]));
      }
      for (int i = 0; i < idx::count; ++i) {
        worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / scale);
      }
    }
    if (worst > 1e-12) pass = false;
    notes << "swap equivariance " << fmt("%.1e", worst);
  }

  // The single-strain subspace is preserved by the flow.
  {
    ParameterSet p;
    SolverSettings st;
    st.dense_output_interval = 5.0;
    const Trajectory traj =
        integrate(one_strain_start(), p, 0.0, 240.0, st);
    double worst = 0.0;
    for (const State& s : traj.states) {
      for (int i : {idx::I2, idx::R2, idx::S2, idx::I12, idx::I21, idx::R,
                    idx::V2, idx::V12}) {
        worst = std::max(worst, std::abs(s[i]));
      }
    }
    if (worst > 1e-12 * p.lambda_N / p.mu) pass = false;
    notes << ", subspace leak " << fmt("%.1e", worst);
  }

  // With no disease-induced mortality the human total is conserved once it
  // starts on the demographic equilibrium.
  {
    ParameterSet p;
    p.delta = 0.0;
    State x0 = two_strain_start();
    const double n_target = p.lambda_N / p.mu;
    const double m_target = p.lambda_M / p.kappa;
    x0.x[idx::S] += n_target - x0.human_total();
    x0.x[idx::U] += m_target - x0.vector_total();
    SolverSettings st;
    st.dense_output_interval = 10.0;
    const Trajectory traj = integrate(x0, p, 0.0, 1000.0, st);
    double worst = 0.0;
    for (const State& s : traj.states) {
      worst = std::max(worst, std::abs(s.human_total() / n_target - 1.0));
      worst = std::max(worst, std::abs(s.vector_total() / m_target - 1.0));
    }
    if (worst > 1e-8) pass = false;
    notes << ", conservation drift " << fmt("%.1e", worst) << " (tol 1e-8)";
  }

  // Long-time population bounds.
  {
    ParameterSet p;
    SolverSettings st;
    st.dense_output_interval = 4.0;
    const Trajectory traj =
        integrate(two_strain_start(), p, 0.0, 8000.0, st);
    const BoundsReport rep = long_time_bounds_check(traj, p);
    if (!rep.ok) pass = false;
    notes << ", limsup bounds " << (rep.ok ? "hold" : "VIOLATED");
  }

  notes << fmt(", %.1f s", seconds_since(t0));
  report(9, "structural properties", pass, notes.str());
}

}  // namespace

int main() {
  std::printf("dengue2s acceptance run\n");

  criterion_1_branch_point();
  BifurcationEvent hopf_storage;
  const BifurcationEvent* hopf = criterion_2_hopf(hopf_storage);
  criterion_3_orbit_family(hopf);
  criterion_4_bistability();
  criterion_5_r0_gate();
  criterion_6_closed_forms();
  criterion_7_criticality();
  criterion_8_jacobian();
  criterion_9_structure();

  if (g_failures == 0) {
    std::printf("all 9 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}

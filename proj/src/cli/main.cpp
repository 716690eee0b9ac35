// Command-line front end: every subcommand loads a scenario, applies the
// command-line overrides, and writes its outputs plus a manifest into a
// run directory named by the scenario hash.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dengue/center_manifold.hpp"
#include "dengue/continuation.hpp"
#include "dengue/csvio.hpp"
#include "dengue/equilibria.hpp"
#include "dengue/integrate.hpp"
#include "dengue/manifest.hpp"
#include "dengue/model.hpp"
#include "dengue/orbits.hpp"
#include "dengue/scenario.hpp"

namespace {

using namespace dengue;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = "out";
  std::vector<std::string> sets;
  std::string free_name;
  std::vector<double> range;
  double tol = 0.0;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* range_opt = nullptr;
  CLI::Option* free_opt = nullptr;
};

void add_common_options(CLI::App* sub, CommonArgs& c) {
  sub->add_option("scenario,--scenario", c.scenario_path,
                  "scenario JSON file");
  sub->add_option("--out", c.out_dir, "output root directory")
      ->capture_default_str();
  sub->add_option("--set", c.sets,
                  "override a parameter or initial-state component, "
                  "name=value (repeatable)");
  c.free_opt = sub->add_option("--free", c.free_name,
                               "free parameter for sweeps (e.g. alpha)");
  c.range_opt = sub->add_option("--range", c.range, "parameter range: lo hi")
                    ->expected(2);
  c.tol_opt = sub->add_option("--tol", c.tol, "tolerance override");
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError(what + " is not a number: '" + text + "'");
  }
  if (used != text.size()) {
    throw ValidationError(what + " is not a number: '" + text + "'");
  }
  return value;
}

void apply_sets(Scenario& s, const std::vector<std::string>& sets) {
  for (const std::string& kv : sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ValidationError("--set expects name=value, got '" + kv + "'");
    }
    const std::string name = kv.substr(0, eq);
    const double value = parse_double(kv.substr(eq + 1), "--set " + name);

    bool is_param = false;
    for (std::string_view p : ParameterSet::names()) {
      if (name == p) is_param = true;
    }
    if (is_param) {
      s.params.set(name, value);
      continue;
    }
    int component = -1;
    for (int i = 0; i < idx::count; ++i) {
      if (name == kComponentNames[i]) component = i;
    }
    if (component >= 0) {
      if (!s.initial_state) {
        throw ValidationError("--set " + name +
                              " targets the initial state, but the scenario "
                              "has no initial_state");
      }
      (*s.initial_state)[component] = value;
      continue;
    }
    throw ValidationError("--set references unknown name '" + name + "'");
  }
}

struct RunContext {
  Scenario scenario;
  std::string hash;
  std::filesystem::path run_dir;
  RunManifest manifest;

  void add_output(const std::string& name) {
    manifest.outputs.push_back(name);
  }
  void finish() const {
    write_manifest(manifest, run_dir / "manifest.json");
  }
};

// Load + override + validate, then open the per-run directory. When kind
// is set the subcommand re-targets the scenario (so e.g. `r0` accepts a
// simulate scenario); `reproduce` keeps the file's own kind.
RunContext prepare(const CommonArgs& c, std::optional<RunKind> kind) {
  const std::string& path = c.scenario_path;
  if (path.empty()) {
    throw ValidationError(
        "a scenario file is required (positional or --scenario)");
  }
  RunContext ctx;
  ctx.scenario = load_scenario(path);
  apply_sets(ctx.scenario, c.sets);
  if (c.free_opt->count() > 0) {
    ctx.scenario.options.free_param = free_param_from_string(c.free_name);
  }
  if (c.range_opt->count() > 0) {
    ctx.scenario.options.range = {{c.range[0], c.range[1]}};
  }
  if (c.tol_opt->count() > 0) {
    ctx.scenario.options.tol = c.tol;
  }
  if (kind) ctx.scenario.run_kind = *kind;
  ctx.scenario.validate();

  const std::string canonical = serialize_scenario(ctx.scenario);
  ctx.hash = scenario_hash(canonical);
  ctx.run_dir = make_run_directory(c.out_dir, ctx.hash);
  {
    std::FILE* f = std::fopen((ctx.run_dir / "scenario.json").c_str(), "wb");
    if (!f) {
      throw IoError("cannot open output file: " +
                    (ctx.run_dir / "scenario.json").string());
    }
    std::fwrite(canonical.data(), 1, canonical.size(), f);
    std::fclose(f);
  }
  ctx.manifest.scenario_hash = ctx.hash;
  ctx.manifest.timestamp = utc_timestamp_now();
  ctx.add_output("scenario.json");
  std::printf("run %s -> %s\n", ctx.hash.c_str(), ctx.run_dir.c_str());
  return ctx;
}

SolverSettings make_solver_settings(const RunOptions& o) {
  SolverSettings ss;
  if (o.rel_tol) ss.rel_tol = *o.rel_tol;
  if (o.abs_tol) ss.abs_tol = *o.abs_tol;
  if (o.max_step) ss.max_step = *o.max_step;
  if (o.sample_interval) ss.dense_output_interval = *o.sample_interval;
  ss.validate();
  return ss;
}

ContinuationSettings make_continuation_settings(const RunOptions& o) {
  ContinuationSettings cs;
  if (o.initial_step) cs.initial_step = *o.initial_step;
  if (o.max_arc_step) cs.max_step = *o.max_arc_step;
  if (o.max_steps) cs.max_steps = *o.max_steps;
  if (o.tol) cs.corrector_tol = *o.tol;
  cs.validate();
  return cs;
}

void note_solver_settings(RunContext& ctx, const SolverSettings& ss,
                          const ParameterSet& p) {
  ctx.manifest.solver_settings["rel_tol"] = ss.rel_tol;
  ctx.manifest.solver_settings["abs_tol"] = ss.resolved_abs_tol(p);
  ctx.manifest.solver_settings["max_step"] = ss.max_step;
  ctx.manifest.solver_settings["sample_interval"] = ss.dense_output_interval;
}

void note_continuation_settings(RunContext& ctx,
                                const ContinuationSettings& cs,
                                const ParameterSet& p) {
  ctx.manifest.solver_settings["initial_step"] = cs.initial_step;
  ctx.manifest.solver_settings["min_step"] = cs.min_step;
  ctx.manifest.solver_settings["max_arc_step"] = cs.max_step;
  ctx.manifest.solver_settings["max_steps"] = cs.max_steps;
  ctx.manifest.solver_settings["corrector_tol"] =
      cs.corrector_tol > 0.0 ? cs.corrector_tol : default_equilibrium_tol(p);
  ctx.manifest.solver_settings["event_param_tol"] = cs.event_param_tol;
}

double i_tot(const State& s) {
  return s[idx::I1] + s[idx::I2] + s[idx::I12] + s[idx::I21];
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_simulate(const CommonArgs& c) {
  RunContext ctx = prepare(c, RunKind::simulate);
  const Scenario& s = ctx.scenario;
  const SolverSettings ss = make_solver_settings(s.options);
  const double t0 = s.options.t0.value_or(0.0);
  const double t1 = s.options.t1.value_or(600.0);

  const Trajectory traj = integrate(*s.initial_state, s.params, t0, t1, ss);
  write_trajectory_csv(traj, ctx.run_dir / "trajectory.csv");
  ctx.add_output("trajectory.csv");
  note_solver_settings(ctx, ss, s.params);
  ctx.manifest.solver_settings["t0"] = t0;
  ctx.manifest.solver_settings["t1"] = t1;
  ctx.finish();

  const State& last = traj.states.back();
  std::printf("integrated %g -> %g months (%zu samples, %lld steps)\n", t0, t1,
              traj.times.size(), static_cast<long long>(traj.meta.steps));
  std::printf("final state: I_tot = %.10g, N = %.10g, M = %.10g\n",
              i_tot(last), last.human_total(), last.vector_total());
  std::printf("wrote trajectory.csv\n");
}

void cmd_settle(const CommonArgs& c) {
  RunContext ctx = prepare(c, RunKind::settle);
  const Scenario& s = ctx.scenario;
  const SolverSettings ss = make_solver_settings(s.options);
  const double tol = s.options.tol.value_or(default_equilibrium_tol(s.params));
  const double t_max = s.options.t_max.value_or(60000.0);

  const SettleResult result = settle(*s.initial_state, s.params, tol, t_max, ss);
  note_solver_settings(ctx, ss, s.params);
  ctx.manifest.solver_settings["tol"] = tol;
  ctx.manifest.solver_settings["t_max"] = t_max;

  if (result.settled) {
    write_equilibria_csv({result.record}, ctx.run_dir / "settled.csv");
    ctx.add_output("settled.csv");
    ctx.finish();
    std::printf("settled at t = %.6g months\n", result.t_end);
    std::printf("kind = %s, stable = %s, I_tot = %.10g, residual = %.3g\n",
                std::string(to_string(result.record.kind)).c_str(),
                result.record.stable ? "yes" : "no", i_tot(result.record.state),
                result.record.residual_norm);
  } else {
    ctx.finish();
    std::printf("did not settle within t_max = %.6g months\n", t_max);
    std::printf("oscillation suspected: %s\n",
                result.oscillation_suspected ? "yes" : "no");
  }
}

void cmd_r0(const CommonArgs& c) {
  RunContext ctx = prepare(c, RunKind::r0);
  const double value = r0(ctx.scenario.params);
  const char* verdict = value > 1.0   ? "supercritical"
                        : value < 1.0 ? "subcritical"
                                      : "critical";
  {
    std::FILE* f = std::fopen((ctx.run_dir / "r0.csv").c_str(), "wb");
    if (!f) {
      throw IoError("cannot open output file: " +
                    (ctx.run_dir / "r0.csv").string());
    }
    std::fprintf(f, "r0,verdict\n%s,%s\n", format_double(value).c_str(),
                 verdict);
    std::fclose(f);
  }
  ctx.add_output("r0.csv");
  ctx.finish();
  std::printf("R0 = %s\n%s\n", format_double(value).c_str(), verdict);
}

void cmd_equilibria(const CommonArgs& c) {
  RunContext ctx = prepare(c, RunKind::equilibria);
  const ParameterSet& p = ctx.scenario.params;
  std::vector<EquilibriumRecord> records;
  std::vector<std::string> notes;

  records.push_back(disease_free_equilibrium(p));
  for (int strain : {1, 2}) {
    try {
      records.push_back(one_strain_equilibrium(p, strain));
    } catch (const ValidationError& e) {
      notes.push_back("one_strain_" + std::to_string(strain) +
                      ": not present (" + e.what() + ")");
    }
  }
  try {
    records.push_back(two_strain_symmetric_equilibrium(p));
  } catch (const ValidationError& e) {
    notes.push_back(std::string("two_strain_symmetric: not present (") +
                    e.what() + ")");
  } catch (const NumericalError& e) {
    notes.push_back(std::string("two_strain_symmetric: not found (") +
                    e.what() + ")");
  }

  write_equilibria_csv(records, ctx.run_dir / "equilibria.csv");
  ctx.add_output("equilibria.csv");
  ctx.finish();

  for (const EquilibriumRecord& rec : records) {
    double worst = rec.eigenvalues(0).real();
    for (int i = 1; i < rec.eigenvalues.size(); ++i) {
      worst = std::max(worst, rec.eigenvalues(i).real());
    }
    std::printf("%-22s stable = %-3s max Re eig = %+.6e I_tot = %.10g\n",
                std::string(to_string(rec.kind)).c_str(),
                rec.stable ? "yes" : "no", worst, i_tot(rec.state));
  }
  for (const std::string& n : notes) std::printf("%s\n", n.c_str());
  std::printf("wrote equilibria.csv (%zu records)\n", records.size());
}

void cmd_bifcoeff(const CommonArgs& c) {
  RunContext ctx = prepare(c, RunKind::bifcoeff);
  const ParameterSet& p = ctx.scenario.params;
  const CenterManifoldWeights weights =
      ctx.scenario.options.weights.value_or(CenterManifoldWeights{});
  const BifurcationCoefficients coeffs =
      center_manifold_coefficients(p, weights);
  const double alpha_star = critical_alpha(p);
  const double alpha_threshold = alpha_c(p, weights);
  const char* direction = coeffs.a < 0.0 ? "forward" : "backward";

  {
    std::FILE* f = std::fopen((ctx.run_dir / "bifcoeff.csv").c_str(), "wb");
    if (!f) {
      throw IoError("cannot open output file: " +
                    (ctx.run_dir / "bifcoeff.csv").string());
    }
    std::fprintf(f, "a,b,alpha_star,alpha_c,direction\n%s,%s,%s,%s,%s\n",
                 format_double(coeffs.a).c_str(),
                 format_double(coeffs.b).c_str(),
                 format_double(alpha_star).c_str(),
                 format_double(alpha_threshold).c_str(), direction);
    std::fclose(f);
  }
  ctx.add_output("bifcoeff.csv");
  ctx.finish();

  std::printf("a = %s\n", format_double(coeffs.a).c_str());
  std::printf("b = %s\n", format_double(coeffs.b).c_str());
  std::printf("alpha* = %s\n", format_double(alpha_star).c_str());
  std::printf("alpha_c = %s\n", format_double(alpha_threshold).c_str());
  std::printf("the transcritical bifurcation at alpha* is %s\n", direction);
}

void print_branch_summary(const std::string& name, const Branch& branch) {
  std::printf("%-13s %5zu points", (name + ":").c_str(),
              branch.points.size());
  if (branch.events.empty()) {
    std::printf(", no events\n");
    return;
  }
  for (const BifurcationEvent& e : branch.events) {
    std::printf(", %s at %s = %.9g",
                std::string(to_string(e.kind)).c_str(),
                std::string(to_string(e.param_name)).c_str(), e.param_value);
    if (e.kind == EventKind::hopf) std::printf(" (imag %.6g)", e.imag_pair);
  }
  std::printf("\n");
}

void cmd_continue(const CommonArgs& c) {
  RunContext ctx = prepare(c, RunKind::continuation);
  const Scenario& s = ctx.scenario;
  const FreeParam fp = *s.options.free_param;
  const std::array<double, 2> range = *s.options.range;
  const ContinuationSettings cs = make_continuation_settings(s.options);

  ParameterSet base = s.params;
  const double current = get_param(base, fp);
  const double start = (current >= range[0] && current <= range[1])
                           ? current
                           : 0.5 * (range[0] + range[1]);
  set_param(base, fp, start);

  struct NamedBranch {
    std::string name;
    Branch branch;
  };
  std::vector<NamedBranch> branches;
  std::vector<std::string> notes;

  branches.push_back({"disease_free",
                      continue_equilibria(disease_free_equilibrium(base), base,
                                          fp, range, cs)});
  try {
    branches.push_back({"one_strain",
                        continue_equilibria(one_strain_equilibrium(base, 1),
                                            base, fp, range, cs)});
  } catch (const ValidationError& e) {
    notes.push_back(std::string("one_strain branch skipped: ") + e.what());
  }
  try {
    branches.push_back(
        {"two_strain",
         continue_equilibria(two_strain_symmetric_equilibrium(base), base, fp,
                             range, cs)});
  } catch (const ValidationError& e) {
    notes.push_back(std::string("two_strain branch skipped: ") + e.what());
  } catch (const NumericalError& e) {
    notes.push_back(std::string("two_strain branch skipped: ") + e.what());
  }

  note_continuation_settings(ctx, cs, base);
  for (const NamedBranch& nb : branches) {
    const std::string branch_file = "branch_" + nb.name + ".csv";
    const std::string events_file = "branch_" + nb.name + "_events.csv";
    write_branch_csv(nb.branch, ctx.run_dir / branch_file);
    write_events_csv(nb.branch.events, ctx.run_dir / events_file);
    ctx.add_output(branch_file);
    ctx.add_output(events_file);
  }
  ctx.finish();

  std::printf("continued %s over [%g, %g]\n",
              std::string(to_string(fp)).c_str(), range[0], range[1]);
  for (const NamedBranch& nb : branches) {
    print_branch_summary(nb.name, nb.branch);
  }
  for (const std::string& n : notes) std::printf("%s\n", n.c_str());
}

// Hunt the Hopf point on the coexistence branch, then follow the cycle
// family it spawns across the requested range.
std::vector<PeriodicOrbit> orbit_family(const ParameterSet& params,
                                        FreeParam fp,
                                        std::array<double, 2> range,
                                        const ContinuationSettings& cs,
                                        BifurcationEvent* hopf_out) {
  ParameterSet base = params;
  const double current = get_param(base, fp);
  const std::array<double, 2> eq_range = {std::min(current, range[0]),
                                          std::max(current, range[1])};
  const Branch eq_branch = continue_equilibria(
      two_strain_symmetric_equilibrium(base), base, fp, eq_range, cs);
  const BifurcationEvent* hopf = nullptr;
  for (const BifurcationEvent& e : eq_branch.events) {
    if (e.kind == EventKind::hopf) {
      hopf = &e;
      break;
    }
  }
  if (hopf == nullptr) {
    throw NumericalError(
        "no Hopf point found on the coexistence branch over the sweep range; "
        "widen the range or move the starting parameter value");
  }
  if (hopf_out != nullptr) *hopf_out = *hopf;
  return continue_periodic_orbits(*hopf, base, range, cs);
}

void write_orbit_outputs(RunContext& ctx,
                         const std::vector<PeriodicOrbit>& family,
                         const std::string& prefix) {
  for (std::size_t k = 0; k < family.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%03zu.csv", prefix.c_str(), k);
    write_orbit_csv(family[k], ctx.run_dir / name);
    ctx.add_output(name);
  }
  const std::string summary = prefix + ".csv";
  write_orbit_family_csv(family, ctx.run_dir / summary);
  ctx.add_output(summary);
}

void cmd_orbits(const CommonArgs& c) {
  RunContext ctx = prepare(c, RunKind::orbits);
  const Scenario& s = ctx.scenario;
  const FreeParam fp = *s.options.free_param;
  const std::array<double, 2> range = *s.options.range;
  const ContinuationSettings cs = make_continuation_settings(s.options);

  BifurcationEvent hopf;
  const std::vector<PeriodicOrbit> family =
      orbit_family(s.params, fp, range, cs, &hopf);

  note_continuation_settings(ctx, cs, s.params);
  write_orbit_outputs(ctx, family, "orbit");
  ctx.finish();

  std::printf("Hopf point: %s = %.9g (imag %.6g)\n",
              std::string(to_string(fp)).c_str(), hopf.param_value,
              hopf.imag_pair);
  std::printf("%zu orbits over %s in [%.9g, %.9g]\n", family.size(),
              std::string(to_string(fp)).c_str(),
              family.front().param_value, family.back().param_value);
  std::printf("period %.6g -> %.6g months, amplitude %.6g -> %.6g\n",
              family.front().period, family.back().period,
              family.front().amplitude, family.back().amplitude);
  const std::size_t stable_count = static_cast<std::size_t>(
      std::count_if(family.begin(), family.end(),
                    [](const PeriodicOrbit& o) { return o.stable; }));
  std::printf("stable orbits: %zu of %zu\n", stable_count, family.size());
}

// Fixed end-to-end pipeline: time series from the two documented starts,
// the three-branch bifurcation sweep, and the cycle family, followed by a
// detected-vs-reported summary table.
void cmd_reproduce(const CommonArgs& c) {
  RunContext ctx = prepare(c, std::nullopt);
  const ParameterSet p = ctx.scenario.params;

  // Documented starting states: a seeded two-strain population and the
  // same population with every strain-2 / secondary compartment folded
  // back into the susceptibles.
  State two_ic{};
  two_ic[idx::S] = 9000.0;
  two_ic[idx::I1] = 20.0;
  two_ic[idx::I2] = 20.0;
  two_ic[idx::R] = 960.0;
  two_ic[idx::U] = 99000.0;
  two_ic[idx::V1] = 500.0;
  two_ic[idx::V2] = 500.0;
  State one_ic{};
  one_ic[idx::S] = 9980.0;
  one_ic[idx::I1] = 20.0;
  one_ic[idx::U] = 99500.0;
  one_ic[idx::V1] = 500.0;

  std::printf("\n[1/3] time series (600 months) and attractors\n");
  SolverSettings ss;
  const Trajectory two_traj = integrate(two_ic, p, 0.0, 600.0, ss);
  write_trajectory_csv(two_traj, ctx.run_dir / "timeseries_two_strain.csv");
  ctx.add_output("timeseries_two_strain.csv");
  const Trajectory one_traj = integrate(one_ic, p, 0.0, 600.0, ss);
  write_trajectory_csv(one_traj, ctx.run_dir / "timeseries_one_strain.csv");
  ctx.add_output("timeseries_one_strain.csv");

  const double tol = default_equilibrium_tol(p);
  const SettleResult settle_two = settle(two_ic, p, tol, 200000.0, ss);
  const SettleResult settle_one = settle(one_ic, p, tol, 200000.0, ss);
  auto describe = [](const char* label, const SettleResult& r) {
    if (r.settled) {
      std::printf("  %-18s -> %s (I_tot = %.10g, residual = %.3g)\n", label,
                  std::string(to_string(r.record.kind)).c_str(),
                  i_tot(r.record.state), r.record.residual_norm);
    } else {
      std::printf("  %-18s -> no equilibrium by t = %.6g%s\n", label, r.t_end,
                  r.oscillation_suspected ? " (oscillation suspected)" : "");
    }
  };
  describe("two-strain start", settle_two);
  describe("one-strain start", settle_one);

  std::printf("\n[2/3] equilibrium branches, alpha in [0.1, 0.75]\n");
  const ContinuationSettings cs;
  const std::array<double, 2> sweep = {0.1, 0.75};
  const Branch dfe_branch = continue_equilibria(disease_free_equilibrium(p), p,
                                                FreeParam::alpha, sweep, cs);
  const Branch one_branch = continue_equilibria(one_strain_equilibrium(p, 1),
                                                p, FreeParam::alpha, sweep, cs);
  const Branch two_branch =
      continue_equilibria(two_strain_symmetric_equilibrium(p), p,
                          FreeParam::alpha, sweep, cs);
  const struct {
    const char* name;
    const Branch* branch;
  } sweeps[] = {{"disease_free", &dfe_branch},
                {"one_strain", &one_branch},
                {"two_strain", &two_branch}};
  for (const auto& [name, branch] : sweeps) {
    const std::string branch_file = std::string("branch_") + name + ".csv";
    const std::string events_file =
        std::string("branch_") + name + "_events.csv";
    write_branch_csv(*branch, ctx.run_dir / branch_file);
    write_events_csv(branch->events, ctx.run_dir / events_file);
    ctx.add_output(branch_file);
    ctx.add_output(events_file);
    print_branch_summary(name, *branch);
  }

  double alpha_star_detected = 0.0;
  for (const BifurcationEvent& e : dfe_branch.events) {
    if (e.kind == EventKind::branch_point) {
      alpha_star_detected = e.param_value;
      break;
    }
  }
  const BifurcationEvent* hopf = nullptr;
  for (const BifurcationEvent& e : two_branch.events) {
    if (e.kind == EventKind::hopf) {
      hopf = &e;
      break;
    }
  }
  if (alpha_star_detected == 0.0 || hopf == nullptr) {
    throw NumericalError(
        "the equilibrium sweep did not produce both the branch point and "
        "the Hopf point; cannot continue the pipeline");
  }

  std::printf("\n[3/3] periodic orbits, alpha in [0.529, 0.75]\n");
  const std::vector<PeriodicOrbit> family =
      continue_periodic_orbits(*hopf, p, {0.529, 0.75}, cs);
  write_orbit_outputs(ctx, family, "orbit");
  bool amplitude_increasing = true;
  for (std::size_t k = 1; k < family.size(); ++k) {
    if (!(family[k].amplitude > family[k - 1].amplitude)) {
      amplitude_increasing = false;
    }
  }
  std::printf("  %zu orbits, period %.6g -> %.6g months, amplitude %.6g -> "
              "%.6g\n",
              family.size(), family.front().period, family.back().period,
              family.front().amplitude, family.back().amplitude);
  ctx.finish();

  const double r0_detected = r0(p);
  std::printf("\nsummary: detected vs reported\n");
  std::printf("  %-28s %-12s %-22s %s\n", "quantity", "reported", "detected",
              "|difference|");
  auto row = [](const char* what, double reported, double detected) {
    std::printf("  %-28s %-12g %-22.12g %.3g\n", what, reported, detected,
                std::abs(detected - reported));
  };
  row("basic reproduction number", 1.0813, r0_detected);
  row("transcritical alpha", 0.33355, alpha_star_detected);
  row("Hopf alpha", 0.50012, hopf->param_value);
  row("orbit family lower end", 0.529, family.front().param_value);
  row("orbit family upper end", 0.75, family.back().param_value);
  std::printf("  %-28s %-12s %s\n", "amplitude grows with alpha", "yes",
              amplitude_increasing ? "yes" : "NO");
  std::printf("  %-28s %-12s %s + %s\n", "coexisting attractors",
              "two kinds",
              settle_two.settled
                  ? std::string(to_string(settle_two.record.kind)).c_str()
                  : "none",
              settle_one.settled
                  ? std::string(to_string(settle_one.record.kind)).c_str()
                  : "none");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-strain host-vector dengue model toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  CommonArgs sim_args, settle_args, r0_args, eq_args, bif_args, cont_args,
      orb_args, rep_args;
  CLI::App* sim = app.add_subcommand(
      "simulate", "integrate the model over the scenario's time window");
  add_common_options(sim, sim_args);
  CLI::App* set = app.add_subcommand(
      "settle", "integrate until an equilibrium is reached (or give up)");
  add_common_options(set, settle_args);
  CLI::App* rz = app.add_subcommand(
      "r0", "basic reproduction number and threshold verdict");
  add_common_options(rz, r0_args);
  CLI::App* eq = app.add_subcommand(
      "equilibria", "closed-form equilibria with stability");
  add_common_options(eq, eq_args);
  CLI::App* bif = app.add_subcommand(
      "bifcoeff", "center-manifold coefficients at the threshold");
  add_common_options(bif, bif_args);
  CLI::App* cont = app.add_subcommand(
      "continue", "equilibrium branches with event detection");
  add_common_options(cont, cont_args);
  CLI::App* orb = app.add_subcommand(
      "orbits", "periodic-orbit family from the Hopf point");
  add_common_options(orb, orb_args);
  CLI::App* rep = app.add_subcommand(
      "reproduce", "run the full reference pipeline and compare");
  add_common_options(rep, rep_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) cmd_simulate(sim_args);
    if (set->parsed()) cmd_settle(settle_args);
    if (rz->parsed()) cmd_r0(r0_args);
    if (eq->parsed()) cmd_equilibria(eq_args);
    if (bif->parsed()) cmd_bifcoeff(bif_args);
    if (cont->parsed()) cmd_continue(cont_args);
    if (orb->parsed()) cmd_orbits(orb_args);
    if (rep->parsed()) cmd_reproduce(rep_args);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}

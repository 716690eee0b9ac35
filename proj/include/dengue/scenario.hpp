#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "dengue/center_manifold.hpp"
#include "dengue/model.hpp"
#include "dengue/state.hpp"

namespace dengue {

// What a scenario file asks the tool to do. The names match the CLI
// subcommands; `continuation` is spelled "continue" on the wire.
enum class RunKind {
  simulate,
  settle,
  r0,
  equilibria,
  bifcoeff,
  continuation,
  orbits
};

std::string_view to_string(RunKind k);
RunKind run_kind_from_string(std::string_view s);

// Kind-specific settings. Every field is optional in the file; consumers
// fall back to the documented defaults. validate(kind) enforces the
// fields a given run kind cannot do without.
struct RunOptions {
  // simulate: integration window (months) and dense-output spacing.
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<double> sample_interval;

  // Shared solver settings.
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<double> max_step;

  // settle: horizon (months).
  std::optional<double> t_max;

  // Residual / corrector tolerance (settle, equilibria, continue, orbits).
  std::optional<double> tol;

  // continue / orbits: the swept parameter and its closed range.
  std::optional<FreeParam> free_param;
  std::optional<std::array<double, 2>> range;
  std::optional<double> initial_step;
  std::optional<double> max_arc_step;
  std::optional<int> max_steps;

  // bifcoeff: eigenvector weights of the reduction.
  std::optional<CenterManifoldWeights> weights;

  // Throws ValidationError when a required field for `kind` is absent or
  // a present field is out of range.
  void validate(RunKind kind) const;

  bool operator==(const RunOptions&) const = default;
};

// One run, fully described: model rates, optional initial state, the run
// kind, and its options. A scenario file holds exactly one of these.
struct Scenario {
  ParameterSet params;
  std::optional<State> initial_state;
  RunKind run_kind = RunKind::simulate;
  RunOptions options;

  // params.validate(), state nonnegativity when present, and the
  // kind-specific option requirements (simulate/settle need an initial
  // state; continue/orbits need free_param and range).
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

// Strict parse of a scenario JSON document: every key is checked against
// the schema and unknown keys are rejected; all ten rates are required.
// Throws ValidationError carrying the offending field (or the parser's
// line/byte context for malformed JSON).
Scenario parse_scenario(const std::string& text);

// Reads the file and parses it. Unreadable file -> IoError.
Scenario load_scenario(const std::string& path);

// Canonical JSON serialization; doubles round-trip exactly and
// parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace dengue

#include "dengue/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

namespace dengue {

using nlohmann::json;

std::string_view to_string(RunKind k) {
  switch (k) {
    case RunKind::simulate: return "simulate";
    case RunKind::settle: return "settle";
    case RunKind::r0: return "r0";
    case RunKind::equilibria: return "equilibria";
    case RunKind::bifcoeff: return "bifcoeff";
    case RunKind::continuation: return "continue";
    case RunKind::orbits: return "orbits";
  }
  throw ValidationError("unknown run kind");
}

RunKind run_kind_from_string(std::string_view s) {
  if (s == "simulate") return RunKind::simulate;
  if (s == "settle") return RunKind::settle;
  if (s == "r0") return RunKind::r0;
  if (s == "equilibria") return RunKind::equilibria;
  if (s == "bifcoeff") return RunKind::bifcoeff;
  if (s == "continue") return RunKind::continuation;
  if (s == "orbits") return RunKind::orbits;
  throw ValidationError(
      "run_kind must be one of simulate, settle, r0, equilibria, bifcoeff, "
      "continue, orbits; got '" +
      std::string(s) + "'");
}

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw ValidationError(message);
}

void require_positive(const std::optional<double>& v, std::string_view name) {
  if (v && !(*v > 0.0)) {
    fail("run_options." + std::string(name) + " must be positive");
  }
}

const json& require_object(const json& j, std::string_view where) {
  if (!j.is_object()) fail(std::string(where) + " must be a JSON object");
  return j;
}

void check_keys(const json& obj, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

double number_at(const json& obj, std::string_view where,
                 std::string_view key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(std::string(where) + "." + std::string(key) + " is required");
  }
  if (!it->is_number()) {
    fail(std::string(where) + "." + std::string(key) + " must be a number");
  }
  return it->get<double>();
}

void read_optional_number(const json& obj, std::string_view where,
                          std::string_view key, std::optional<double>& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number()) {
    fail(std::string(where) + "." + std::string(key) + " must be a number");
  }
  out = it->get<double>();
}

ParameterSet parse_params(const json& j) {
  const json& obj = require_object(j, "params");
  ParameterSet p;
  for (std::string_view name : ParameterSet::names()) {
    p.set(name, number_at(obj, "params", name));
  }
  std::vector<std::string_view> allowed(ParameterSet::names().begin(),
                                        ParameterSet::names().end());
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) {
      if (item.key() == a) known = true;
    }
    if (!known) fail("unknown key '" + item.key() + "' in params");
  }
  return p;
}

State parse_initial_state(const json& j) {
  const json& obj = require_object(j, "initial_state");
  State s{};
  for (const auto& item : obj.items()) {
    int component = -1;
    for (int i = 0; i < idx::count; ++i) {
      if (item.key() == kComponentNames[i]) {
        component = i;
        break;
      }
    }
    if (component < 0) {
      fail("unknown key '" + item.key() + "' in initial_state");
    }
    if (!item.value().is_number()) {
      fail("initial_state." + item.key() + " must be a number");
    }
    s[component] = item.value().get<double>();
  }
  return s;
}

CenterManifoldWeights parse_weights(const json& j) {
  const json& obj = require_object(j, "run_options.weights");
  check_keys(obj, "run_options.weights", {"w2", "w3", "v2", "v3"});
  CenterManifoldWeights w;
  w.w2 = number_at(obj, "run_options.weights", "w2");
  w.w3 = number_at(obj, "run_options.weights", "w3");
  w.v2 = number_at(obj, "run_options.weights", "v2");
  w.v3 = number_at(obj, "run_options.weights", "v3");
  return w;
}

RunOptions parse_run_options(const json& j) {
  const json& obj = require_object(j, "run_options");
  check_keys(obj, "run_options",
             {"t0", "t1", "sample_interval", "rel_tol", "abs_tol", "max_step",
              "t_max", "tol", "free_param", "range", "initial_step",
              "max_arc_step", "max_steps", "weights"});
  RunOptions opts;
  read_optional_number(obj, "run_options", "t0", opts.t0);
  read_optional_number(obj, "run_options", "t1", opts.t1);
  read_optional_number(obj, "run_options", "sample_interval",
                       opts.sample_interval);
  read_optional_number(obj, "run_options", "rel_tol", opts.rel_tol);
  read_optional_number(obj, "run_options", "abs_tol", opts.abs_tol);
  read_optional_number(obj, "run_options", "max_step", opts.max_step);
  read_optional_number(obj, "run_options", "t_max", opts.t_max);
  read_optional_number(obj, "run_options", "tol", opts.tol);
  read_optional_number(obj, "run_options", "initial_step", opts.initial_step);
  read_optional_number(obj, "run_options", "max_arc_step", opts.max_arc_step);

  if (auto it = obj.find("free_param"); it != obj.end()) {
    if (!it->is_string()) fail("run_options.free_param must be a string");
    opts.free_param = free_param_from_string(it->get<std::string>());
  }
  if (auto it = obj.find("range"); it != obj.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
        !(*it)[1].is_number()) {
      fail("run_options.range must be an array of two numbers");
    }
    opts.range = {{(*it)[0].get<double>(), (*it)[1].get<double>()}};
  }
  if (auto it = obj.find("max_steps"); it != obj.end()) {
    if (!it->is_number_integer()) {
      fail("run_options.max_steps must be an integer");
    }
    opts.max_steps = it->get<int>();
  }
  if (auto it = obj.find("weights"); it != obj.end()) {
    opts.weights = parse_weights(*it);
  }
  return opts;
}

}  // namespace

void RunOptions::validate(RunKind kind) const {
  require_positive(sample_interval, "sample_interval");
  require_positive(rel_tol, "rel_tol");
  require_positive(abs_tol, "abs_tol");
  require_positive(max_step, "max_step");
  require_positive(t_max, "t_max");
  require_positive(tol, "tol");
  require_positive(initial_step, "initial_step");
  require_positive(max_arc_step, "max_arc_step");
  if (max_steps && *max_steps <= 0) {
    fail("run_options.max_steps must be positive");
  }
  if (range && !((*range)[0] < (*range)[1])) {
    fail("run_options.range must satisfy lo < hi");
  }
  if (weights) weights->validate();

  if (kind == RunKind::simulate) {
    const double lo = t0.value_or(0.0);
    const double hi = t1.value_or(600.0);
    if (!(hi > lo)) fail("run_options.t1 must exceed t0");
  }
  if (kind == RunKind::continuation || kind == RunKind::orbits) {
    if (!free_param) {
      fail("run_options.free_param is required for run kind '" +
           std::string(to_string(kind)) + "'");
    }
    if (!range) {
      fail("run_options.range is required for run kind '" +
           std::string(to_string(kind)) + "'");
    }
  }
}

void Scenario::validate() const {
  params.validate();
  if (initial_state) initial_state->validate();
  options.validate(run_kind);
  if ((run_kind == RunKind::simulate || run_kind == RunKind::settle) &&
      !initial_state) {
    fail("initial_state is required for run kind '" +
         std::string(to_string(run_kind)) + "'");
  }
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") +
                          e.what());
  }
  require_object(j, "scenario");
  check_keys(j, "the scenario document",
             {"params", "initial_state", "run_kind", "run_options"});

  Scenario s;
  if (!j.contains("params")) fail("params is required");
  s.params = parse_params(j.at("params"));

  if (!j.contains("run_kind")) fail("run_kind is required");
  if (!j.at("run_kind").is_string()) fail("run_kind must be a string");
  s.run_kind = run_kind_from_string(j.at("run_kind").get<std::string>());

  if (j.contains("initial_state")) {
    s.initial_state = parse_initial_state(j.at("initial_state"));
  }
  if (j.contains("run_options")) {
    s.options = parse_run_options(j.at("run_options"));
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scenario file: " + path);
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  json j;
  json params = json::object();
  for (std::string_view name : ParameterSet::names()) {
    params[std::string(name)] = s.params.get(name);
  }
  j["params"] = std::move(params);

  if (s.initial_state) {
    json st = json::object();
    for (int i = 0; i < idx::count; ++i) {
      st[std::string(kComponentNames[i])] = (*s.initial_state)[i];
    }
    j["initial_state"] = std::move(st);
  }

  j["run_kind"] = std::string(to_string(s.run_kind));

  json opts = json::object();
  const RunOptions& o = s.options;
  auto put = [&opts](std::string_view key, const std::optional<double>& v) {
    if (v) opts[std::string(key)] = *v;
  };
  put("t0", o.t0);
  put("t1", o.t1);
  put("sample_interval", o.sample_interval);
  put("rel_tol", o.rel_tol);
  put("abs_tol", o.abs_tol);
  put("max_step", o.max_step);
  put("t_max", o.t_max);
  put("tol", o.tol);
  if (o.free_param) opts["free_param"] = std::string(to_string(*o.free_param));
  if (o.range) opts["range"] = {(*o.range)[0], (*o.range)[1]};
  put("initial_step", o.initial_step);
  put("max_arc_step", o.max_arc_step);
  if (o.max_steps) opts["max_steps"] = *o.max_steps;
  if (o.weights) {
    opts["weights"] = {{"w2", o.weights->w2},
                       {"w3", o.weights->w3},
                       {"v2", o.weights->v2},
                       {"v3", o.weights->v3}};
  }
  if (!opts.empty()) j["run_options"] = std::move(opts);

  return j.dump(2) + "\n";
}

}  // namespace dengue

// End-to-end checks of the dengue2s command-line tool: exit codes, printed
// summaries, and the on-disk run artifacts.  Each case launches the real
// binary through the shell and inspects what it left behind.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const char* kBin = DENGUE2S_BIN;
const fs::path kScenarios = SCENARIOS_DIR;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dengue2s_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const fs::path& scratch) {
  const fs::path capture = scratch / "capture.txt";
  const std::string cmd = std::string(kBin) + " " + args + " > " +
                          capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.output = slurp(capture);
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Every run creates exactly one hash-named directory under the out root.
fs::path only_run_dir(const fs::path& out_root) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(out_root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  REQUIRE(dirs.size() == 1);
  return dirs.front();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::vector<std::vector<double>> csv_rows(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path.string());
  std::string line;
  REQUIRE(std::getline(in, line));  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const std::string& f : split_csv(line)) row.push_back(std::stod(f));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("a missing subcommand is a usage error") {
  const fs::path dir = fresh_dir("nosub");
  const RunResult r =
      run_cli((kScenarios / "baseline.json").string() + " --out " +
                  (dir / "out").string(),
              dir);
  CHECK(r.code == 2);
  CHECK(contains(r.output, "subcommand"));
}

TEST_CASE("r0 reports the reproduction number and regime") {
  const fs::path dir = fresh_dir("r0");
  const RunResult ok =
      run_cli("r0 " + (kScenarios / "baseline.json").string() + " --out " +
                  (dir / "out").string(),
              dir);
  CHECK(ok.code == 0);
  CHECK(contains(ok.output, "R0 = 1.0813194157719"));
  CHECK(contains(ok.output, "supercritical"));

  const fs::path run_dir = only_run_dir(dir / "out");
  CHECK(fs::exists(run_dir / "r0.csv"));
  CHECK(fs::exists(run_dir / "manifest.json"));
  CHECK(fs::exists(run_dir / "scenario.json"));
  CHECK(run_dir.filename().string().size() == 12);
}

TEST_CASE("settle names the attractor it lands on") {
  const fs::path dir = fresh_dir("settle");
  const RunResult r =
      run_cli("settle " + (kScenarios / "baseline.json").string() + " --out " +
                  (dir / "out").string(),
              dir);
  CHECK(r.code == 0);
  CHECK(contains(r.output, "settled at t"));
  CHECK(contains(r.output, "two_strain_symmetric"));
  CHECK(contains(r.output, "stable = yes"));
  CHECK(fs::exists(only_run_dir(dir / "out") / "settled.csv"));
}

TEST_CASE("a missing scenario file exits with the i/o code") {
  const fs::path dir = fresh_dir("missing");
  const RunResult r = run_cli(
      "r0 " + (dir / "does_not_exist.json").string() + " --out " +
          (dir / "out").string(),
      dir);
  CHECK(r.code == 4);
  CHECK(contains(r.output, "cannot read scenario file"));
}

TEST_CASE("malformed scenario text exits with the validation code") {
  const fs::path dir = fresh_dir("malformed");
  std::ofstream(dir / "broken.json") << "{ this is not json\n";
  const RunResult r = run_cli(
      "r0 " + (dir / "broken.json").string() + " --out " +
          (dir / "out").string(),
      dir);
  CHECK(r.code == 2);
  CHECK(contains(r.output, "not valid JSON"));
}

TEST_CASE("an inconsistent time window exits with the validation code") {
  const fs::path dir = fresh_dir("badwindow");
  auto j = nlohmann::json::parse(slurp(kScenarios / "baseline.json"));
  j["run_options"]["t0"] = 50.0;
  j["run_options"]["t1"] = 10.0;
  std::ofstream(dir / "bad.json") << j.dump(2) << "\n";
  const RunResult r = run_cli(
      "simulate " + (dir / "bad.json").string() + " --out " +
          (dir / "out").string(),
      dir);
  CHECK(r.code == 2);
  CHECK(contains(r.output, "t1 must exceed t0"));
}

TEST_CASE("unknown --set names exit with the validation code") {
  const fs::path dir = fresh_dir("badset");
  const RunResult r = run_cli(
      "simulate " + (kScenarios / "baseline.json").string() +
          " --set zeta=1 --out " + (dir / "out").string(),
      dir);
  CHECK(r.code == 2);
  CHECK(contains(r.output, "--set references unknown name"));
}

TEST_CASE("a run with one strain silenced keeps that strain at zero") {
  const fs::path dir = fresh_dir("onestrain");
  const RunResult r = run_cli(
      "simulate " + (kScenarios / "baseline.json").string() +
          " --set I2=0 --set V2=0 --out " + (dir / "out").string(),
      dir);
  CHECK(r.code == 0);

  const auto rows = csv_rows(only_run_dir(dir / "out") / "trajectory.csv");
  REQUIRE(rows.size() > 100);
  // Header: t,S,I1,I2,R1,R2,S1,S2,I12,I21,R,U,V1,V2,V12,...
  bool strain2_silent = true;
  for (const auto& row : rows) {
    if (row[3] != 0.0 || row[8] != 0.0 || row[9] != 0.0 || row[13] != 0.0) {
      strain2_silent = false;
      break;
    }
  }
  CHECK(strain2_silent);
  CHECK(rows.back()[2] > 0.0);  // strain 1 still circulating
}

TEST_CASE("identical runs produce identical artifacts") {
  const fs::path dir = fresh_dir("determinism");
  const std::string scenario = (kScenarios / "baseline.json").string();
  const RunResult a = run_cli(
      "simulate " + scenario + " --out " + (dir / "a").string(), dir);
  const RunResult b = run_cli(
      "simulate " + scenario + " --out " + (dir / "b").string(), dir);
  CHECK(a.code == 0);
  CHECK(b.code == 0);

  const fs::path ra = only_run_dir(dir / "a");
  const fs::path rb = only_run_dir(dir / "b");
  CHECK(ra.filename() == rb.filename());
  CHECK(slurp(ra / "trajectory.csv") == slurp(rb / "trajectory.csv"));
  CHECK(slurp(ra / "scenario.json") == slurp(rb / "scenario.json"));
}

TEST_CASE("requesting orbits away from the oscillation regime is a numerical error") {
  const fs::path dir = fresh_dir("nohopf");
  const RunResult r = run_cli(
      "orbits " + (kScenarios / "baseline.json").string() +
          " --free alpha --range 0.4 0.45 --out " + (dir / "out").string(),
      dir);
  CHECK(r.code == 3);
  CHECK(contains(r.output, "no Hopf point found"));
}

TEST_CASE("help exits cleanly") {
  const fs::path dir = fresh_dir("help");
  const RunResult r = run_cli("--help", dir);
  CHECK(r.code == 0);
  CHECK(contains(r.output, "simulate"));
  CHECK(contains(r.output, "reproduce"));
}

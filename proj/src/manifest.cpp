#include "dengue/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "dengue/types.hpp"

namespace dengue {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string scenario_hash(std::string_view canonical_scenario) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_scenario)));
  return std::string(buffer);
}

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &parts);
  return std::string(buffer);
}

std::string serialize_manifest(const RunManifest& m) {
  nlohmann::json j;
  j["scenario_hash"] = m.scenario_hash;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  j["solver_settings"] = m.solver_settings;
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out << serialize_manifest(m);
  out.flush();
  if (!out) throw IoError("failed while writing: " + path.string());
}

std::filesystem::path make_run_directory(const std::filesystem::path& out_root,
                                         std::string_view scenario_hash) {
  const std::filesystem::path dir =
      out_root / std::string(scenario_hash.substr(0, 12));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create run directory " + dir.string() + ": " +
                  ec.message());
  }
  return dir;
}

}  // namespace dengue

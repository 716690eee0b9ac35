#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dengue {

inline constexpr std::string_view kToolVersion = "dengue2s 0.1.0";

// 64-bit FNV-1a over the raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

// 16 lowercase hex digits of fnv1a64 over the canonical scenario text
// (the output of serialize_scenario, overrides already applied). Equal
// scenarios hash equal; any content change moves the hash.
std::string scenario_hash(std::string_view canonical_scenario);

// What gets written next to the outputs of every run.
struct RunManifest {
  std::string scenario_hash;
  std::string tool_version{kToolVersion};
  std::string timestamp;  // UTC, ISO 8601
  // Effective numerical settings of the run, name -> value.
  std::map<std::string, double> solver_settings;
  // Output file names, relative to the run directory.
  std::vector<std::string> outputs;
};

std::string utc_timestamp_now();

std::string serialize_manifest(const RunManifest& m);

void write_manifest(const RunManifest& m, const std::filesystem::path& path);

// out_root/<first 12 hash digits>, created (with parents) if absent.
std::filesystem::path make_run_directory(const std::filesystem::path& out_root,
                                         std::string_view scenario_hash);

}  // namespace dengue

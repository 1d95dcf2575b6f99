#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ofdr {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct InputDigest {
  std::string path;
  std::string sha256;
};

// Written next to every output set; argv plus the canonical config text are
// enough to repeat the run.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string config_hash;
  std::string config_text;
  std::vector<InputDigest> inputs;
  std::string toolkit_version = kToolkitVersion;
  std::string timestamp_utc;
};

InputDigest digest_file(const std::filesystem::path& path);

// Current UTC time as ISO-8601.
std::string utc_timestamp();

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& file);

inline constexpr const char* kManifestFile = "run_manifest.json";

}  // namespace ofdr

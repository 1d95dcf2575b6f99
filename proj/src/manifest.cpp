#include "ofdr/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ofdr/config.hpp"
#include "ofdr/error.hpp"

namespace ofdr {

InputDigest digest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return {path.string(), sha256_hex(buf.str())};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["config_hash"] = m.config_hash;
  j["config"] = m.config_text;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& d : m.inputs) j["inputs"].push_back({{"path", d.path}, {"sha256", d.sha256}});
  j["toolkit_version"] = m.toolkit_version;
  j["timestamp_utc"] = m.timestamp_utc;

  std::filesystem::create_directories(dir);
  std::ofstream out(dir / kManifestFile);
  if (!out) throw Error(ErrorKind::Io, "cannot write manifest in " + dir.string());
  out << j.dump(2) << "\n";
}

RunManifest read_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  const auto j = nlohmann::json::parse(in);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.config_hash = j.at("config_hash").get<std::string>();
  m.config_text = j.at("config").get<std::string>();
  for (const auto& d : j.at("inputs")) m.inputs.push_back({d.at("path"), d.at("sha256")});
  m.toolkit_version = j.at("toolkit_version").get<std::string>();
  m.timestamp_utc = j.at("timestamp_utc").get<std::string>();
  return m;
}

}  // namespace ofdr

#include "ofdr/config.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ofdr/error.hpp"

namespace ofdr {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Io, "sha256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

enum class Bound { Positive, NonNegative, Any, Fraction };

struct Field {
  const char* key;
  const char* unit;
  std::function<void(ToolkitConfig&, const std::string&)> set;
  std::function<std::string(const ToolkitConfig&)> get;
};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::Config, "key '" + key + "': " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail(key, "'" + text + "' is not a number");
  return v;
}

double parse_bounded(const std::string& key, const std::string& text, Bound bound, const char* unit) {
  const double v = parse_double(key, text);
  const std::string expect = std::string(" (unit: ") + unit + ")";
  switch (bound) {
    case Bound::Positive:
      if (!(v > 0.0)) fail(key, "must be > 0" + expect + ", got " + text);
      break;
    case Bound::NonNegative:
      if (!(v >= 0.0)) fail(key, "must be >= 0" + expect + ", got " + text);
      break;
    case Bound::Fraction:
      if (!(v > 0.0 && v < 1.0)) fail(key, "must lie in (0, 1)" + expect + ", got " + text);
      break;
    case Bound::Any:
      break;
  }
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(key, "'" + text + "' is not a non-negative integer");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  fail(key, "'" + text + "' is not a boolean (true|false)");
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_number(values[i]);
  }
  return out;
}

template <class Member>
Field number(const char* key, const char* unit, Bound bound, Member member) {
  return {key, unit,
          [=](ToolkitConfig& c, const std::string& v) { member(c) = parse_bounded(key, v, bound, unit); },
          [=](const ToolkitConfig& c) { return format_number(member(const_cast<ToolkitConfig&>(c))); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(number("fiber.radius_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.fiber.radius_mm; }));
    f.push_back(number("fiber.modulus_gpa", "GPa", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.fiber.modulus_gpa; }));
    f.push_back(number("fiber.max_strain", "strain fraction", Bound::Fraction, [](ToolkitConfig& c) -> double& { return c.fiber.max_strain; }));
    f.push_back(number("wire.width_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.wire.width_mm; }));
    f.push_back(number("wire.height_mm", "mm", Bound::NonNegative, [](ToolkitConfig& c) -> double& { return c.wire.height_mm; }));
    f.push_back(number("wire.modulus_gpa", "GPa", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.wire.modulus_gpa; }));
    f.push_back(number("channel.width_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.channel.width_mm; }));
    f.push_back(number("channel.height_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.channel.height_mm; }));
    f.push_back(number("design.width_min_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.sweep.width_min_mm; }));
    f.push_back(number("design.width_max_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.sweep.width_max_mm; }));
    f.push_back(number("design.height_min_mm", "mm", Bound::NonNegative, [](ToolkitConfig& c) -> double& { return c.sweep.height_min_mm; }));
    f.push_back(number("design.height_max_mm", "mm", Bound::NonNegative, [](ToolkitConfig& c) -> double& { return c.sweep.height_max_mm; }));
    f.push_back(number("design.step_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.sweep.step_mm; }));
    f.push_back(number("sensor.bias_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.sensor.bias_mm; }));
    f.push_back(number("sensor.resolution_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.sensor.resolution_mm; }));
    f.push_back(number("sensor.noise_ue", "microstrain", Bound::NonNegative, [](ToolkitConfig& c) -> double& { return c.sensor.noise_ue; }));
    f.push_back({"sensor.seed", "integer",
                 [](ToolkitConfig& c, const std::string& v) { c.sensor.seed = parse_count("sensor.seed", v); },
                 [](const ToolkitConfig& c) { return std::to_string(c.sensor.seed); }});
    f.push_back(number("sensor.rate_hz", "Hz", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.rate_hz; }));
    f.push_back({"jig.radii_mm", "comma-separated mm, 0 = straight",
                 [](ToolkitConfig& c, const std::string& v) {
                   std::vector<double> radii;
                   std::stringstream ss(v);
                   std::string item;
                   while (std::getline(ss, item, ',')) {
                     radii.push_back(parse_bounded("jig.radii_mm", trim(item), Bound::NonNegative, "mm"));
                   }
                   c.jig.radii_mm = std::move(radii);
                 },
                 [](const ToolkitConfig& c) { return format_list(c.jig.radii_mm); }});
    f.push_back({"jig.trials", "integer",
                 [](ToolkitConfig& c, const std::string& v) {
                   c.jig.trials = parse_count("jig.trials", v);
                   if (c.jig.trials == 0) fail("jig.trials", "must be >= 1");
                 },
                 [](const ToolkitConfig& c) { return std::to_string(c.jig.trials); }});
    f.push_back(number("jig.slot_length_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.jig.slot_length_mm; }));
    f.push_back(number("jig.window_start_mm", "mm", Bound::Any, [](ToolkitConfig& c) -> double& { return c.jig.window_start_mm; }));
    f.push_back(number("jig.window_end_mm", "mm", Bound::Any, [](ToolkitConfig& c) -> double& { return c.jig.window_end_mm; }));
    f.push_back(number("jig.threshold_sigmas", "multiples of stddev", Bound::NonNegative, [](ToolkitConfig& c) -> double& { return c.jig.threshold_sigmas; }));
    f.push_back({"experiment.kind", "c_shape|j_shape",
                 [](ToolkitConfig& c, const std::string& v) {
                   const ShapeKind k = parse_shape_kind(v);
                   if (k == ShapeKind::Custom) fail("experiment.kind", "custom truths come from a truth CSV");
                   c.experiment.kind = k;
                 },
                 [](const ToolkitConfig& c) { return std::string(to_string(c.experiment.kind)); }});
    f.push_back(number("experiment.radius_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.experiment.radius_mm; }));
    f.push_back(number("experiment.span_mm", "mm", Bound::Positive, [](ToolkitConfig& c) -> double& { return c.experiment.span_mm; }));
    f.push_back(number("experiment.straight_mm", "mm", Bound::NonNegative, [](ToolkitConfig& c) -> double& { return c.experiment.straight_mm; }));
    f.push_back(number("recon.threshold_ue", "microstrain, < 0 = from straight slot", Bound::Any, [](ToolkitConfig& c) -> double& { return c.recon.threshold_ue; }));
    f.push_back({"recon.sign", "+1|-1",
                 [](ToolkitConfig& c, const std::string& v) {
                   const double s = parse_double("recon.sign", v);
                   if (s != 1.0 && s != -1.0) fail("recon.sign", "must be 1 or -1");
                   c.recon.sign = static_cast<int>(s);
                 },
                 [](const ToolkitConfig& c) { return std::to_string(c.recon.sign); }});
    f.push_back({"recon.scheme", "midpoint|euler",
                 [](ToolkitConfig& c, const std::string& v) { c.recon.scheme = parse_scheme(v); },
                 [](const ToolkitConfig& c) { return std::string(to_string(c.recon.scheme)); }});
    f.push_back(number("recon.spacing_mm", "mm, 0 = interrogator grid", Bound::NonNegative, [](ToolkitConfig& c) -> double& { return c.recon.spacing_mm; }));
    f.push_back({"output.dir", "path",
                 [](ToolkitConfig& c, const std::string& v) { c.output.dir = v; },
                 [](const ToolkitConfig& c) { return c.output.dir; }});
    f.push_back({"output.svg", "true|false",
                 [](ToolkitConfig& c, const std::string& v) { c.output.svg = parse_bool("output.svg", v); },
                 [](const ToolkitConfig& c) { return std::string(c.output.svg ? "true" : "false"); }});
    return f;
  }();
  return table;
}

void validate(const ToolkitConfig& c) {
  try {
    c.fiber.validate();
    c.wire.validate();
    c.sensor.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  if (c.experiment.kind == ShapeKind::JShape && !(c.experiment.span_mm > c.experiment.straight_mm)) {
    fail("experiment.span_mm", "J-shape span must exceed experiment.straight_mm");
  }
  if (c.jig.radii_mm.empty()) fail("jig.radii_mm", "needs at least one radius");
}

}  // namespace

ToolkitConfig parse_config(const std::string& text, const std::string& origin) {
  std::map<std::string, const Field*> index;
  for (const auto& f : fields()) index[f.key] = &f;

  ToolkitConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = index.find(key);
    if (it == index.end()) {
      throw Error(ErrorKind::Config, origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    it->second->set(cfg, value);
  }
  validate(cfg);
  return cfg;
}

ToolkitConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize_config(const ToolkitConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += "\n";
  }
  return out;
}

std::string config_hash(const ToolkitConfig& config) { return sha256_hex(serialize_config(config)); }

}  // namespace ofdr

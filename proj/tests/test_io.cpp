#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ofdr/config.hpp"
#include "ofdr/csv_io.hpp"
#include "ofdr/error.hpp"
#include "ofdr/manifest.hpp"

using namespace ofdr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ofdr_test_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    return e.what();
  }
  FAIL("expected config error");
  return {};
}

}  // namespace

TEST_CASE("empty config yields the reference constants") {
  const fs::path dir = scratch("empty");
  std::ofstream(dir / "empty.cfg").close();
  const ToolkitConfig c = load_config(dir / "empty.cfg");
  CHECK(c.fiber.radius_mm == 0.0775);
  CHECK(c.fiber.modulus_gpa == 4.81);
  CHECK(c.fiber.max_strain == 0.01);
  CHECK(c.wire.modulus_gpa == 75.0);
  CHECK(c.wire.width_mm == 0.813);
  CHECK(c.wire.height_mm == 0.152);
  CHECK(c.sensor.resolution_mm == 1.3);
  CHECK(c.rate_hz == 62.5);
  CHECK(c.jig.radii_mm == std::vector<double>{0, 100, 95, 90, 85, 80, 75, 70, 65, 60});
  CHECK(c.channel.width_mm == 1.2);
  CHECK(c.channel.height_mm == 0.6);
}

TEST_CASE("config validation names the key and unit") {
  const std::string neg = config_error("fiber.radius_mm = -1\n");
  CHECK(neg.find("fiber.radius_mm") != std::string::npos);
  CHECK(neg.find("mm") != std::string::npos);

  CHECK(config_error("fiber.colour = red").find("unknown key 'fiber.colour'") != std::string::npos);
  CHECK(config_error("wire.width_mm = wide").find("not a number") != std::string::npos);
  CHECK(config_error("fiber.max_strain = 1.5").find("fiber.max_strain") != std::string::npos);
  CHECK(config_error("recon.sign = 2").find("recon.sign") != std::string::npos);
  CHECK(config_error("no equals sign here").find("key = value") != std::string::npos);
  CHECK(config_error("experiment.kind = j_shape\nexperiment.span_mm = 40").find("experiment.span_mm") !=
        std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/ofdr.cfg"), Error);
}

TEST_CASE("config parsing, comments and hash idempotence") {
  const ToolkitConfig c = parse_config(
      "# sensor\n"
      "sensor.noise_ue = 12.5   # per sample\n"
      "sensor.seed = 7\n"
      "jig.radii_mm = 0, 100, 80\n"
      "recon.scheme = euler\n"
      "experiment.kind = j_shape\n"
      "output.svg = false\n");
  CHECK(c.sensor.noise_ue == 12.5);
  CHECK(c.sensor.seed == 7);
  CHECK(c.jig.radii_mm == std::vector<double>{0, 100, 80});
  CHECK(c.recon.scheme == Scheme::Euler);
  CHECK(c.experiment.kind == ShapeKind::JShape);
  CHECK_FALSE(c.output.svg);

  const std::string text = serialize_config(c);
  const ToolkitConfig again = parse_config(text);
  CHECK(serialize_config(again) == text);
  CHECK(config_hash(again) == config_hash(c));
  CHECK(config_hash(ToolkitConfig{}) != config_hash(c));
  CHECK(config_hash(c).size() == 64);
}

TEST_CASE("strain and shape CSV round trip at 15 significant digits") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  StrainProfile p;
  double s = 0.0;
  for (int i = 0; i < 200; ++i) {
    s += 0.1 + std::abs(u(rng)) * 1e-3;
    p.positions.push_back(s);
    p.strains.push_back(u(rng));
  }
  p.meta = {62.5, "sensor-7", 0.016};

  std::stringstream first;
  write_strain_csv(first, p);
  std::stringstream in(first.str());
  const StrainProfile back = parse_strain_csv(in);
  std::stringstream second;
  write_strain_csv(second, back);
  CHECK(second.str() == first.str());
  CHECK(back.meta.sensor_id == "sensor-7");
  CHECK(back.meta.timestamp_s == 0.016);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(back.strains[i] == doctest::Approx(p.strains[i]).epsilon(1e-14));
  }

  PlanarShape shape;
  for (int i = 0; i < 50; ++i) {
    shape.arc_length.push_back(1.3 * i);
    shape.points.push_back({u(rng), u(rng)});
    shape.headings.push_back(u(rng) * 1e-3);
  }
  std::stringstream a;
  write_shape_csv(a, shape);
  std::stringstream ain(a.str());
  std::stringstream b;
  write_shape_csv(b, parse_shape_csv(ain));
  CHECK(b.str() == a.str());
}

TEST_CASE("CSV readers reject malformed input") {
  std::stringstream bad_header("s,e\n1,2\n");
  CHECK_THROWS_AS(parse_strain_csv(bad_header), Error);
  std::stringstream bad_value("s_mm,strain_ue\n1,abc\n");
  CHECK_THROWS_AS(parse_strain_csv(bad_value), Error);
  std::stringstream non_monotone("s_mm,strain_ue\n1,2\n1,3\n");
  CHECK_THROWS_AS(parse_strain_csv(non_monotone), Error);
  std::stringstream comments("# a comment\n\ns_mm, strain_ue\n# mid\n0,1\n1.3,2\n");
  CHECK(parse_strain_csv(comments).size() == 2);
}

TEST_CASE("model file round trip") {
  ModelFile f;
  f.model = reported_model();
  f.straight_threshold_ue = 31.25;
  std::stringstream out;
  write_model(out, f);
  std::stringstream in(out.str());
  const ModelFile back = parse_model(in);
  CHECK(back.model.a == f.model.a);
  CHECK(back.model.b == f.model.b);
  CHECK(back.model.fit_min_ue == f.model.fit_min_ue);
  REQUIRE(back.straight_threshold_ue);
  CHECK(*back.straight_threshold_ue == 31.25);

  std::stringstream missing("a = 5\n");
  CHECK_THROWS_AS(parse_model(missing), Error);
  std::stringstream positive_b("a = 5\nb = 1\n");
  CHECK_THROWS_AS(parse_model(positive_b), Error);
}

TEST_CASE("calibration manifest groups trials by radius") {
  const fs::path dir = scratch("manifest");
  StrainProfile p;
  for (int i = 0; i < 20; ++i) {
    p.positions.push_back(i);
    p.strains.push_back(1000.0 + i);
  }
  write_strain_csv(dir / "a.csv", p);
  write_strain_csv(dir / "b.csv", p);
  write_calibration_manifest(dir / "cal.csv", {{100.0, "a.csv", 5.0, 9.0}, {100.0, "b.csv", 0.0, 0.0},
                                              {0.0, "a.csv", 0.0, 0.0}});
  const auto slots = load_calibration_slots(dir / "cal.csv");
  REQUIRE(slots.size() == 2);
  CHECK(slots[0].radius_mm == 100.0);
  CHECK(slots[0].trials.size() == 2);
  CHECK(slots[0].trials[0].size() == 5);
  CHECK(slots[0].trials[1].size() == 20);
  CHECK(slots[1].straight());

  write_calibration_manifest(dir / "empty_window.csv", {{100.0, "a.csv", 50.0, 60.0}});
  CHECK_THROWS_AS(load_calibration_slots(dir / "empty_window.csv"), Error);
}

TEST_CASE("run manifest") {
  const fs::path dir = scratch("run");
  std::ofstream(dir / "input.txt") << "abc";
  RunManifest m;
  m.command = "reconstruct";
  m.argv = {"ofdr", "reconstruct", "--model", "m.txt"};
  m.config_text = serialize_config(ToolkitConfig{});
  m.config_hash = config_hash(ToolkitConfig{});
  m.inputs.push_back(digest_file(dir / "input.txt"));
  m.timestamp_utc = utc_timestamp();
  write_manifest(dir, m);
  const RunManifest back = read_manifest(dir / kManifestFile);
  CHECK(back.command == m.command);
  CHECK(back.argv == m.argv);
  CHECK(back.config_hash == m.config_hash);
  CHECK(parse_config(back.config_text).sensor.resolution_mm == 1.3);
  REQUIRE(back.inputs.size() == 1);
  // sha256("abc")
  CHECK(back.inputs[0].sha256 == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(back.toolkit_version == kToolkitVersion);
}

TEST_CASE("curvature CSV reports both unit scales") {
  CurvatureProfile c{{0.65}, {1.0 / 60.0}};
  std::stringstream out;
  write_curvature_csv(out, c);
  CHECK(out.str() == "s_mm,kappa_per_mm,kappa_per_m\n0.65,0.0166666666666667,16.6666666666667\n");
}

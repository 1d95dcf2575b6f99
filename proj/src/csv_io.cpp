#include "ofdr/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iterator>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ofdr/config.hpp"
#include "ofdr/error.hpp"

namespace ofdr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const std::string t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorKind::Io, where + ": '" + text + "' is not a number");
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

// Reads a headed CSV. Comment lines are offered to `on_comment` (text after '#').
template <class OnRow, class OnComment>
void read_table(std::istream& in, const std::string& origin, const std::string& expected_header,
                OnRow&& on_row, OnComment&& on_comment) {
  std::string line;
  bool have_header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      on_comment(t.substr(1));
      continue;
    }
    const std::string where = origin + ":" + std::to_string(line_no);
    if (!have_header) {
      std::string compact;
      for (char c : t) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != expected_header) {
        throw Error(ErrorKind::Io, where + ": expected header '" + expected_header + "', got '" + t + "'");
      }
      have_header = true;
      continue;
    }
    on_row(split_csv_line(t), where);
  }
  if (!have_header) throw Error(ErrorKind::Io, origin + ": missing header '" + expected_header + "'");
}

void expect_columns(const std::vector<std::string>& cols, std::size_t n, const std::string& where) {
  if (cols.size() != n) {
    throw Error(ErrorKind::Io, where + ": expected " + std::to_string(n) + " columns, got " +
                                   std::to_string(cols.size()));
  }
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) cols.push_back(trim(item));
  if (!line.empty() && line.back() == ',') cols.emplace_back();
  return cols;
}

StrainProfile parse_strain_csv(std::istream& in, const std::string& origin) {
  StrainProfile p;
  read_table(
      in, origin, "s_mm,strain_ue",
      [&](const std::vector<std::string>& cols, const std::string& where) {
        expect_columns(cols, 2, where);
        p.positions.push_back(to_double(cols[0], where));
        p.strains.push_back(to_double(cols[1], where));
      },
      [&](const std::string& comment) {
        const auto eq = comment.find('=');
        if (eq == std::string::npos) return;
        const std::string key = trim(comment.substr(0, eq));
        const std::string value = trim(comment.substr(eq + 1));
        if (key == "rate_hz") p.meta.rate_hz = to_double(value, origin);
        else if (key == "sensor_id") p.meta.sensor_id = value;
        else if (key == "timestamp_s") p.meta.timestamp_s = to_double(value, origin);
      });
  p.validate();
  return p;
}

StrainProfile read_strain_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_strain_csv(in, path.string());
}

void write_strain_csv(std::ostream& out, const StrainProfile& profile) {
  out << "# rate_hz = " << format_number(profile.meta.rate_hz) << "\n";
  if (!profile.meta.sensor_id.empty()) out << "# sensor_id = " << profile.meta.sensor_id << "\n";
  out << "# timestamp_s = " << format_number(profile.meta.timestamp_s) << "\n";
  out << "s_mm,strain_ue\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << format_number(profile.positions[i]) << "," << format_number(profile.strains[i]) << "\n";
  }
}

void write_strain_csv(const std::filesystem::path& path, const StrainProfile& profile) {
  auto out = open_out(path);
  write_strain_csv(out, profile);
}

PlanarShape parse_shape_csv(std::istream& in, const std::string& origin) {
  PlanarShape shape;
  read_table(
      in, origin, "s_mm,x_mm,y_mm,theta_rad",
      [&](const std::vector<std::string>& cols, const std::string& where) {
        expect_columns(cols, 4, where);
        shape.arc_length.push_back(to_double(cols[0], where));
        shape.points.push_back({to_double(cols[1], where), to_double(cols[2], where)});
        shape.headings.push_back(to_double(cols[3], where));
      },
      [](const std::string&) {});
  if (shape.size() < 2) throw Error(ErrorKind::InsufficientData, origin + ": shape needs >= 2 points");
  const double s0 = shape.arc_length.front();
  for (double& s : shape.arc_length) s -= s0;
  return shape;
}

PlanarShape read_shape_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_shape_csv(in, path.string());
}

void write_shape_csv(std::ostream& out, const PlanarShape& shape) {
  out << "s_mm,x_mm,y_mm,theta_rad\n";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    out << format_number(shape.arc_length[i]) << "," << format_number(shape.points[i].x) << ","
        << format_number(shape.points[i].y) << "," << format_number(shape.headings[i]) << "\n";
  }
}

void write_shape_csv(const std::filesystem::path& path, const PlanarShape& shape) {
  auto out = open_out(path);
  write_shape_csv(out, shape);
}

void write_curvature_csv(std::ostream& out, const CurvatureProfile& curv) {
  out << "s_mm,kappa_per_mm,kappa_per_m\n";
  for (std::size_t i = 0; i < curv.size(); ++i) {
    out << format_number(curv.positions[i]) << "," << format_number(curv.curvatures[i]) << ","
        << format_number(curv.curvatures[i] * 1000.0) << "\n";
  }
}

void write_curvature_csv(const std::filesystem::path& path, const CurvatureProfile& curv) {
  auto out = open_out(path);
  write_curvature_csv(out, curv);
}

void write_model(std::ostream& out, const ModelFile& file) {
  // The coefficients need every bit to keep inverse round trips exact.
  auto exact = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  const PowerLawModel& m = file.model;
  out << "# strain-to-radius power law: radius_mm = a * strain_ue^b\n";
  out << "a = " << exact(m.a) << "\n";
  out << "b = " << exact(m.b) << "\n";
  out << "fit_min_ue = " << exact(m.fit_min_ue) << "\n";
  out << "fit_max_ue = " << exact(m.fit_max_ue) << "\n";
  out << "points = " << m.points << "\n";
  out << "rms_log_residual = " << format_number(m.rms_log_residual) << "\n";
  out << "max_abs_log_residual = " << format_number(m.max_abs_log_residual) << "\n";
  if (file.straight_threshold_ue) {
    out << "straight_threshold_ue = " << exact(*file.straight_threshold_ue) << "\n";
  }
}

void write_model(const std::filesystem::path& path, const ModelFile& file) {
  auto out = open_out(path);
  write_model(out, file);
}

ModelFile parse_model(std::istream& in, const std::string& origin) {
  std::map<std::string, double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw Error(ErrorKind::Io, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    static const char* known[] = {"a", "b", "fit_min_ue", "fit_max_ue", "points",
                                  "rms_log_residual", "max_abs_log_residual", "straight_threshold_ue"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw Error(ErrorKind::Io, where + ": unknown model key '" + key + "'");
    }
    values[key] = to_double(line.substr(eq + 1), where);
  }
  for (const char* required : {"a", "b"}) {
    if (!values.count(required)) {
      throw Error(ErrorKind::Io, origin + ": model is missing '" + required + "'");
    }
  }
  ModelFile f;
  f.model.a = values["a"];
  f.model.b = values["b"];
  if (!(f.model.a > 0.0) || !(f.model.b < 0.0)) {
    throw Error(ErrorKind::InvalidSpec, origin + ": model needs a > 0 and b < 0");
  }
  f.model.fit_min_ue = values.count("fit_min_ue") ? values["fit_min_ue"] : 0.0;
  f.model.fit_max_ue = values.count("fit_max_ue") ? values["fit_max_ue"] : HUGE_VAL;
  f.model.points = values.count("points") ? static_cast<std::size_t>(values["points"]) : 0;
  f.model.rms_log_residual = values["rms_log_residual"];
  f.model.max_abs_log_residual = values["max_abs_log_residual"];
  if (values.count("straight_threshold_ue")) f.straight_threshold_ue = values["straight_threshold_ue"];
  return f;
}

ModelFile read_model(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_model(in, path.string());
}

std::vector<ManifestRow> read_calibration_manifest(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<ManifestRow> rows;
  read_table(
      in, path.string(), "radius_mm,strain_csv,window_start_mm,window_end_mm",
      [&](const std::vector<std::string>& cols, const std::string& where) {
        expect_columns(cols, 4, where);
        ManifestRow r;
        r.radius_mm = to_double(cols[0], where);
        if (r.radius_mm < 0.0) throw Error(ErrorKind::Io, where + ": radius must be >= 0 mm");
        r.strain_csv = cols[1];
        r.window_start_mm = to_double(cols[2], where);
        r.window_end_mm = to_double(cols[3], where);
        rows.push_back(std::move(r));
      },
      [](const std::string&) {});
  return rows;
}

void write_calibration_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows) {
  auto out = open_out(path);
  out << "radius_mm,strain_csv,window_start_mm,window_end_mm\n";
  for (const auto& r : rows) {
    out << format_number(r.radius_mm) << "," << r.strain_csv << "," << format_number(r.window_start_mm)
        << "," << format_number(r.window_end_mm) << "\n";
  }
}

std::vector<CalibrationSlot> load_calibration_slots(const std::filesystem::path& manifest) {
  const auto base = manifest.parent_path();
  std::vector<CalibrationSlot> slots;
  for (const auto& row : read_calibration_manifest(manifest)) {
    auto it = std::find_if(slots.begin(), slots.end(),
                           [&](const CalibrationSlot& s) { return s.radius_mm == row.radius_mm; });
    if (it == slots.end()) {
      slots.push_back({row.radius_mm, {}});
      it = std::prev(slots.end());
    }
    StrainProfile trial = extract_window(read_strain_csv(base / row.strain_csv), row.window_start_mm,
                                         row.window_end_mm);
    if (trial.empty()) {
      throw Error(ErrorKind::InsufficientData, row.strain_csv + ": no samples inside the slot window");
    }
    it->trials.push_back(std::move(trial));
  }
  return slots;
}

std::vector<TrialSpec> read_trials(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<TrialSpec> trials;
  read_table(
      in, path.string(), "name,kind,radius_mm,span_mm,straight_mm,strain_csv",
      [&](const std::vector<std::string>& cols, const std::string& where) {
        expect_columns(cols, 6, where);
        TrialSpec t;
        t.name = cols[0];
        t.kind = parse_shape_kind(cols[1]);
        t.radius_mm = to_double(cols[2], where);
        t.span_mm = to_double(cols[3], where);
        t.straight_mm = to_double(cols[4], where);
        t.strain_csv = cols[5];
        trials.push_back(std::move(t));
      },
      [](const std::string&) {});
  return trials;
}

void write_trials(const std::filesystem::path& path, const std::vector<TrialSpec>& trials) {
  auto out = open_out(path);
  out << "name,kind,radius_mm,span_mm,straight_mm,strain_csv\n";
  for (const auto& t : trials) {
    out << t.name << "," << to_string(t.kind) << "," << format_number(t.radius_mm) << ","
        << format_number(t.span_mm) << "," << format_number(t.straight_mm) << "," << t.strain_csv << "\n";
  }
}

void write_report_kv(std::ostream& out, const ErrorReport& r) {
  if (!r.name.empty()) out << "name = " << r.name << "\n";
  out << "tip_error_mm = " << format_number(r.tip_error_mm) << "\n";
  out << "shape_error_mm = " << format_number(r.shape_error_mm) << "\n";
  out << "area_error_avg_mm2 = " << format_number(r.area_error_avg_mm2) << "\n";
  out << "area_error_total_mm2 = " << format_number(r.area_error_total_mm2) << "\n";
  if (r.average_radius_mm) out << "average_radius_mm = " << format_number(*r.average_radius_mm) << "\n";
  if (r.average_strain_ue) out << "average_strain_ue = " << format_number(*r.average_strain_ue) << "\n";
}

std::string report_csv_header() {
  return "name,average_strain_ue,average_radius_mm,tip_error_mm,shape_error_mm,area_error_avg_mm2,"
         "area_error_total_mm2";
}

std::string report_csv_row(const ErrorReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  return r.name + "," + opt(r.average_strain_ue) + "," + opt(r.average_radius_mm) + "," +
         format_number(r.tip_error_mm) + "," + format_number(r.shape_error_mm) + "," +
         format_number(r.area_error_avg_mm2) + "," + format_number(r.area_error_total_mm2);
}

}  // namespace ofdr

#include "ofdr/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ofdr/error.hpp"

namespace ofdr {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void write_svg(std::ostream& out, const std::vector<PlotSeries>& series, const std::string& title) {
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  if (!(max_x >= min_x)) min_x = max_x = min_y = max_y = 0.0;

  const double width_px = 640.0, height_px = 480.0, margin = 40.0;
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = std::min(width_px, height_px) * 0.85 / span;
  auto px = [&](const Vec2& p) {
    return fmt(margin + (p.x - min_x) * scale) + "," + fmt(height_px - margin - (p.y - min_y) * scale);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px + margin << "\" height=\""
      << height_px << "\" viewBox=\"0 0 " << width_px + margin << " " << height_px << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  double legend_y = 40.0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) out << (i ? " " : "") << px(s.points[i]);
    out << "\"/>\n";
    out << "<text x=\"" << width_px - 120 << "\" y=\"" << legend_y << "\" fill=\"" << s.color
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
    legend_y += 16.0;
  }
  out << "<text x=\"" << margin << "\" y=\"" << height_px - 10 << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">extent " << fmt(max_x - min_x) << " x " << fmt(max_y - min_y) << " mm</text>\n";
  out << "</svg>\n";
}

void write_svg(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
               const std::string& title) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_svg(out, series, title);
}

}  // namespace ofdr

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ofdr/profile.hpp"

namespace ofdr {

struct PlotSeries {
  std::string label;
  std::vector<Vec2> points;
  std::string color = "#1f77b4";
  bool dashed = false;
};

// Equal-aspect polyline plot in mm, +y up.
void write_svg(std::ostream& out, const std::vector<PlotSeries>& series, const std::string& title);
void write_svg(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
               const std::string& title);

}  // namespace ofdr

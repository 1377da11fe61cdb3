#pragma once

#include <string>
#include <vector>

namespace momap::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Static SVG line plot; with log_y the values are plotted as log10(|y|)
// (zeros are dropped).
std::string svg_line_plot(const std::string& title, const std::vector<Series>& series, bool log_y = false);

// Values against their index, one marker each.
std::string svg_scatter(const std::string& title, const std::vector<double>& values);

}  // namespace momap::cli

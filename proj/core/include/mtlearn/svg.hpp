#pragma once

#include <string>
#include <vector>

namespace mtlearn::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Polyline per series with markers and a legend.
std::string line_chart(const Chart& chart);

/// Markers only; one colour/shape per series.
std::string scatter_chart(const Chart& chart);

std::string escape_xml(const std::string& text);

}  // namespace mtlearn::svg

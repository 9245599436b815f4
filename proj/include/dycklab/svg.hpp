#pragma once

#include <string>
#include <vector>

namespace dycklab {

struct Series {
  std::string label;
  std::vector<double> xs;  // empty = use 0..n-1
  std::vector<double> ys;
  std::string color;  // empty = palette by position
  bool dashed = false;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<std::string> x_tick_labels;  // optional labels at integer x positions
  int width = 880;
  int height = 360;
};

std::string render_svg(const LineChart& chart);

}  // namespace dycklab

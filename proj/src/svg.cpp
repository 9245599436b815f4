#include "dycklab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dycklab {
namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

std::string render_svg(const LineChart& chart) {
  const double left = 56, right = 16, top = chart.title.empty() ? 16 : 36, bottom = 44;
  const double plot_w = chart.width - left - right;
  const double plot_h = chart.height - top - bottom;

  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool have_point = false;
  for (const auto& s : chart.series) {
    for (size_t i = 0; i < s.ys.size(); ++i) {
      double x = s.xs.empty() ? static_cast<double>(i) : s.xs[i];
      double y = s.ys[i];
      if (!have_point) {
        x_min = x_max = x;
        y_min = y_max = y;
        have_point = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width
      << "\" height=\"" << chart.height << "\" viewBox=\"0 0 " << chart.width << " "
      << chart.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!chart.title.empty())
    svg << "<text x=\"" << chart.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << escape_xml(chart.title)
        << "</text>\n";

  // frame
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";

  // y ticks: 5 evenly spaced
  for (int i = 0; i <= 4; ++i) {
    double y = y_min + (y_max - y_min) * i / 4.0;
    double yy = py(y);
    svg << "<line x1=\"" << left - 4 << "\" y1=\"" << yy << "\" x2=\"" << left
        << "\" y2=\"" << yy << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << yy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << num(std::round(y * 100) / 100) << "</text>\n";
    if (i > 0 && i < 4)
      svg << "<line x1=\"" << left << "\" y1=\"" << yy << "\" x2=\"" << left + plot_w
          << "\" y2=\"" << yy << "\" stroke=\"#ddd\" stroke-dasharray=\"2,3\"/>\n";
  }

  // x ticks: labels per integer position when provided, else 5 evenly spaced
  if (!chart.x_tick_labels.empty()) {
    for (size_t i = 0; i < chart.x_tick_labels.size(); ++i) {
      double xx = px(static_cast<double>(i));
      svg << "<line x1=\"" << xx << "\" y1=\"" << top + plot_h << "\" x2=\"" << xx
          << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"#444\"/>\n";
      svg << "<text x=\"" << xx << "\" y=\"" << top + plot_h + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << escape_xml(chart.x_tick_labels[i]) << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      double x = x_min + (x_max - x_min) * i / 4.0;
      double xx = px(x);
      svg << "<line x1=\"" << xx << "\" y1=\"" << top + plot_h << "\" x2=\"" << xx
          << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"#444\"/>\n";
      svg << "<text x=\"" << xx << "\" y=\"" << top + plot_h + 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
          << num(std::round(x * 100) / 100) << "</text>\n";
    }
  }

  if (!chart.x_label.empty())
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << chart.height - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_xml(chart.x_label) << "</text>\n";
  if (!chart.y_label.empty())
    svg << "<text x=\"14\" y=\"" << top + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 14 " << top + plot_h / 2 << ")\">"
        << escape_xml(chart.y_label) << "</text>\n";

  // series polylines + legend
  double legend_y = top + 14;
  for (size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const std::string color =
        s.color.empty() ? kPalette[k % (sizeof kPalette / sizeof *kPalette)] : s.color;
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (s.dashed) svg << " stroke-dasharray=\"6,4\"";
    svg << " points=\"";
    for (size_t i = 0; i < s.ys.size(); ++i) {
      double x = s.xs.empty() ? static_cast<double>(i) : s.xs[i];
      svg << px(x) << ',' << py(s.ys[i]) << ' ';
    }
    svg << "\"/>\n";
    if (!s.label.empty()) {
      double lx = left + plot_w - 150;
      svg << "<line x1=\"" << lx << "\" y1=\"" << legend_y - 4 << "\" x2=\"" << lx + 22
          << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
      if (s.dashed) svg << " stroke-dasharray=\"6,4\"";
      svg << "/>\n";
      svg << "<text x=\"" << lx + 28 << "\" y=\"" << legend_y
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(s.label)
          << "</text>\n";
      legend_y += 14;
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace dycklab

#include "mtlearn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mtlearn::svg {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 460;
constexpr double kLeft = 70;
constexpr double kRight = 160;  // legend column
constexpr double kTop = 50;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

struct Axis {
  double lo = 0, hi = 1, step = 0.1;

  double to_px(double v, double px_lo, double px_hi) const {
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
  int decimals() const { return std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9))); }
};

double nice_step(double span) {
  double raw = span / 6.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

Axis make_axis(double lo, double hi) {
  if (!(lo < hi)) {
    double pad = lo == 0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  Axis a;
  a.step = nice_step(hi - lo);
  a.lo = std::floor(lo / a.step + 1e-9) * a.step;
  a.hi = std::ceil(hi / a.step - 1e-9) * a.step;
  return a;
}

void marker(std::ostringstream& out, std::size_t index, double x, double y, const char* color) {
  const double r = 4.5;
  switch (index % 5) {
    case 0:
      out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << color << "\"/>\n";
      break;
    case 1:
      out << "<rect x=\"" << num(x - r) << "\" y=\"" << num(y - r) << "\" width=\"" << num(2 * r) << "\" height=\""
          << num(2 * r) << "\" fill=\"" << color << "\"/>\n";
      break;
    default: {
      // triangle, diamond, pentagon
      int sides = static_cast<int>(index % 5) + 1;
      out << "<polygon points=\"";
      for (int k = 0; k < sides; ++k) {
        double angle = -M_PI / 2 + 2 * M_PI * k / sides;
        if (k) out << ' ';
        out << num(x + (r + 1) * std::cos(angle)) << ',' << num(y + (r + 1) * std::sin(angle));
      }
      out << "\" fill=\"" << color << "\"/>\n";
    }
  }
}

std::string render(const Chart& chart, bool lines) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : chart.series) {
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = ymin = 0;
    xmax = ymax = 1;
  }
  Axis ax = make_axis(xmin, xmax);
  Axis ay = make_axis(ymin, ymax);

  const double px0 = kLeft, px1 = kWidth - kRight;
  const double py0 = kHeight - kBottom, py1 = kTop;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(chart.title) << "</text>\n";

  // grid and tick labels
  for (double v = ax.lo; v <= ax.hi + ax.step * 1e-6; v += ax.step) {
    double x = ax.to_px(v, px0, px1);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(x) << "\" y2=\"" << num(py1)
        << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(py0 + 18) << "\" text-anchor=\"middle\">"
        << num(v, ax.decimals()) << "</text>\n";
  }
  for (double v = ay.lo; v <= ay.hi + ay.step * 1e-6; v += ay.step) {
    double y = ay.to_px(v, py0, py1);
    out << "<line x1=\"" << num(px0) << "\" y1=\"" << num(y) << "\" x2=\"" << num(px1) << "\" y2=\"" << num(y)
        << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << num(px0 - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
        << num(v, ay.decimals()) << "</text>\n";
  }
  out << "<rect x=\"" << num(px0) << "\" y=\"" << num(py1) << "\" width=\"" << num(px1 - px0) << "\" height=\""
      << num(py0 - py1) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << num(kHeight - 18) << "\" text-anchor=\"middle\">"
      << escape_xml(chart.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << num((py0 + py1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num((py0 + py1) / 2) << ")\">" << escape_xml(chart.y_label) << "</text>\n";

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (lines && s.points.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < s.points.size(); ++k) {
        if (k) out << ' ';
        out << num(ax.to_px(s.points[k].first, px0, px1)) << ',' << num(ay.to_px(s.points[k].second, py0, py1));
      }
      out << "\"/>\n";
    }
    for (auto [x, y] : s.points) marker(out, i, ax.to_px(x, px0, px1), ay.to_px(y, py0, py1), color);

    double ly = kTop + 10 + 22.0 * static_cast<double>(i);
    marker(out, i, px1 + 24, ly, color);
    out << "<text x=\"" << num(px1 + 36) << "\" y=\"" << num(ly + 4) << "\">" << escape_xml(s.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string line_chart(const Chart& chart) { return render(chart, true); }

std::string scatter_chart(const Chart& chart) { return render(chart, false); }

}  // namespace mtlearn::svg

#include "chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace evoc {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 64;
constexpr double kRight = 24;
constexpr double kTop = 40;
constexpr double kBottom = 48;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Tick label without trailing noise: up to 2 decimals, stripped.
std::string tick(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
    const bool dot = s.back() == '.';
    s.pop_back();
    if (dot) break;
  }
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_line_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<ChartSeries>& series) {
  std::size_t points = 0;
  double y_min = 0.0;  // fitness/diversity charts read better anchored at 0
  double y_max = 1.0;
  bool any = false;
  for (const auto& s : series) {
    points = std::max(points, s.y.size());
    for (double v : s.y) {
      y_max = any ? std::max(y_max, v) : v;
      y_min = any ? std::min(y_min, v) : std::min(0.0, v);
      any = true;
    }
  }
  if (points < 2) points = 2;
  if (y_max <= y_min) y_max = y_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double x_span = static_cast<double>(points - 1);
  const auto px = [&](double i) { return kLeft + plot_w * (i / x_span); };
  const auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - y_min) / (y_max - y_min)); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << tick(kWidth) << "\" height=\""
      << tick(kHeight) << "\" viewBox=\"0 0 " << tick(kWidth) << ' ' << tick(kHeight) << "\">\n";
  out << "<rect width=\"" << tick(kWidth) << "\" height=\"" << tick(kHeight)
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape(title) << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"#333\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n";
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
      << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n";
  out << "</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double vy = y_min + (y_max - y_min) * i / kTicks;
    const double gy = py(vy);
    out << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(gy) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(gy) << "\" stroke=\"#333\"/>\n";
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(gy) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(gy) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(gy + 4)
        << "\" text-anchor=\"end\">" << tick(vy) << "</text>\n";

    const double vx = x_span * i / kTicks;
    const double gx = px(vx);
    out << "<line x1=\"" << num(gx) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(gx)
        << "\" y2=\"" << num(kTop + plot_h + 4) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << num(gx) << "\" y=\"" << num(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << tick(std::round(vx)) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 10)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
      << num(kTop + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";
  out << "</g>\n";

  for (const auto& s : series) {
    if (s.y.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
    if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      if (i > 0) out << ' ';
      out << num(px(static_cast<double>(i))) << ',' << num(py(s.y[i]));
    }
    out << "\"/>\n";
  }

  // Legend, top-left inside the plot.
  double ly = kTop + 14;
  for (const auto& s : series) {
    out << "<line x1=\"" << num(kLeft + 12) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(kLeft + 44) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\"";
    if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
    out << "/>\n";
    out << "<text x=\"" << num(kLeft + 50) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">" << escape(s.label)
        << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
}

}  // namespace evoc

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evoc {

// Minimal self-contained SVG line chart, no external tooling. Output is
// byte-stable: fixed-precision coordinates and no timestamps.
struct ChartSeries {
  std::string label;
  std::string color;       // CSS color
  std::string dash;        // SVG stroke-dasharray, empty = solid
  std::vector<double> y;   // x is the index
};

void write_line_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<ChartSeries>& series);

}  // namespace evoc

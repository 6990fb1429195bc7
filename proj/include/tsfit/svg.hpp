#ifndef TSFIT_SVG_HPP
#define TSFIT_SVG_HPP

#include <string>
#include <vector>

namespace tsfit::svg {

struct Series {
  std::string label;
  std::string color = "#000000";
  std::vector<double> x;
  std::vector<double> y;
};

// Multi-series polyline chart. Output carries no timestamps or other
// run-varying content, so identical inputs produce identical bytes.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<Series>& series);

// Vertical stems from zero, with horizontal band lines at +/- band
// (pass band <= 0 to omit them).
void write_stem_chart(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<double>& y, double band);

}  // namespace tsfit::svg

#endif  // TSFIT_SVG_HPP

#include "tsfit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tsfit/csv.hpp"
#include "tsfit/errors.hpp"

namespace tsfit::svg {

namespace {

constexpr double kWidth = 800.0, kHeight = 420.0;
constexpr double kLeft = 64.0, kRight = 20.0, kTop = 40.0, kBottom = 44.0;

struct Range {
  double lo = 0.0, hi = 1.0;
  double span() const { return hi - lo; }
};

Range nice_range(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

double tick_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step = 10.0;
  if (norm <= 1.0) step = 1.0;
  else if (norm <= 2.0) step = 2.0;
  else if (norm <= 5.0) step = 5.0;
  return step * mag;
}

std::string fmt(double v) {
  // round tiny float noise out of tick labels
  if (std::abs(v) < 1e-12) v = 0.0;
  return csv::format_double(v);
}

class Canvas {
 public:
  Canvas(const std::string& title, Range xr, Range yr) : xr_(xr), yr_(yr) {
    out_ << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
         << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n";
    out_ << "<rect width='" << kWidth << "' height='" << kHeight << "' fill='white'/>\n";
    out_ << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-family='sans-serif' "
         << "font-size='15'>" << title << "</text>\n";
    axes();
  }

  double px(double x) const {
    return kLeft + (x - xr_.lo) / xr_.span() * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - yr_.lo) / yr_.span() * (kHeight - kTop - kBottom);
  }

  void polyline(const std::vector<double>& x, const std::vector<double>& y,
                const std::string& color) {
    out_ << "<polyline fill='none' stroke='" << color << "' stroke-width='1.2' points='";
    for (std::size_t i = 0; i < x.size(); ++i) {
      out_ << fmt(px(x[i])) << "," << fmt(py(y[i])) << " ";
    }
    out_ << "'/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& color,
            const std::string& dash = "") {
    out_ << "<line x1='" << fmt(px(x1)) << "' y1='" << fmt(py(y1)) << "' x2='" << fmt(px(x2))
         << "' y2='" << fmt(py(y2)) << "' stroke='" << color << "' stroke-width='1'";
    if (!dash.empty()) out_ << " stroke-dasharray='" << dash << "'";
    out_ << "/>\n";
  }

  void legend(const std::vector<Series>& series) {
    double y = kTop + 4.0;
    for (const Series& s : series) {
      if (s.label.empty()) continue;
      out_ << "<rect x='" << kWidth - kRight - 150 << "' y='" << y - 9 << "' width='12' height='3' fill='"
           << s.color << "'/>\n";
      out_ << "<text x='" << kWidth - kRight - 132 << "' y='" << y - 4
           << "' font-family='sans-serif' font-size='11'>" << s.label << "</text>\n";
      y += 16.0;
    }
  }

  void save(const std::string& path) {
    out_ << "</svg>\n";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << out_.str();
  }

 private:
  void axes() {
    out_ << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << kWidth - kLeft - kRight
         << "' height='" << kHeight - kTop - kBottom
         << "' fill='none' stroke='#444444' stroke-width='1'/>\n";
    const double xs = tick_step(xr_.span());
    for (double v = std::ceil(xr_.lo / xs) * xs; v <= xr_.hi + 1e-9 * xs; v += xs) {
      const double x = px(v);
      out_ << "<line x1='" << fmt(x) << "' y1='" << kHeight - kBottom << "' x2='" << fmt(x)
           << "' y2='" << kHeight - kBottom + 5 << "' stroke='#444444'/>\n";
      out_ << "<text x='" << fmt(x) << "' y='" << kHeight - kBottom + 18
           << "' text-anchor='middle' font-family='sans-serif' font-size='10'>" << fmt(v)
           << "</text>\n";
    }
    const double ys = tick_step(yr_.span());
    for (double v = std::ceil(yr_.lo / ys) * ys; v <= yr_.hi + 1e-9 * ys; v += ys) {
      const double y = py(v);
      out_ << "<line x1='" << kLeft - 5 << "' y1='" << fmt(y) << "' x2='" << kLeft << "' y2='"
           << fmt(y) << "' stroke='#444444'/>\n";
      out_ << "<text x='" << kLeft - 8 << "' y='" << fmt(y + 3)
           << "' text-anchor='end' font-family='sans-serif' font-size='10'>" << fmt(v)
           << "</text>\n";
    }
  }

  Range xr_, yr_;
  std::ostringstream out_;
};

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<Series>& series) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const Series& s : series) {
    for (double v : s.x) {
      xlo = std::min(xlo, v);
      xhi = std::max(xhi, v);
    }
    for (double v : s.y) {
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  }
  if (!std::isfinite(xlo)) {
    xlo = 0;
    xhi = 1;
    ylo = 0;
    yhi = 1;
  }
  Canvas canvas(title, nice_range(xlo, xhi), nice_range(ylo, yhi));
  for (const Series& s : series) canvas.polyline(s.x, s.y, s.color);
  canvas.legend(series);
  canvas.save(path);
}

void write_stem_chart(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<double>& y, double band) {
  double xlo = 0, xhi = 1, ylo = -1, yhi = 1;
  if (!x.empty()) {
    xlo = *std::min_element(x.begin(), x.end());
    xhi = *std::max_element(x.begin(), x.end());
    ylo = std::min({-band, *std::min_element(y.begin(), y.end()), 0.0});
    yhi = std::max({band, *std::max_element(y.begin(), y.end()), 0.0});
  }
  Canvas canvas(title, nice_range(xlo - 0.5, xhi + 0.5), nice_range(ylo, yhi));
  canvas.line(xlo - 0.5, 0.0, xhi + 0.5, 0.0, "#444444");
  if (band > 0.0) {
    canvas.line(xlo - 0.5, band, xhi + 0.5, band, "#1f77b4", "4,3");
    canvas.line(xlo - 0.5, -band, xhi + 0.5, -band, "#1f77b4", "4,3");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    canvas.line(x[i], 0.0, x[i], y[i], "#000000");
  }
  canvas.save(path);
}

}  // namespace tsfit::svg

// Copyright 2026 The tassign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tassign/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tassign/errors.hpp"

namespace tassign {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

struct AxisScale {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double to_unit(double v) const {
    double a = lo, b = hi, x = v;
    if (log) {
      a = std::log10(a);
      b = std::log10(b);
      x = std::log10(x);
    }
    if (b <= a) return 0.5;
    return (x - a) / (b - a);
  }
};

std::string trim_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void write_line_chart(const std::string& path,
                      const std::vector<Series>& series,
                      const ChartOptions& options) {
  const int margin_left = 70, margin_right = 20, margin_top = 40,
            margin_bottom = 55;
  const double plot_w = options.width - margin_left - margin_right;
  const double plot_h = options.height - margin_top - margin_bottom;

  // Thinned copies with log-incompatible points dropped.
  std::vector<Series> drawn;
  AxisScale xs, ys;
  xs.log = options.log_x;
  ys.log = options.log_y;
  xs.lo = ys.lo = std::numeric_limits<double>::infinity();
  xs.hi = ys.hi = -std::numeric_limits<double>::infinity();
  for (const Series& s : series) {
    Series t;
    t.name = s.name;
    const std::size_t stride =
        std::max<std::size_t>(1, s.points.size() / options.max_points_per_series);
    for (std::size_t i = 0; i < s.points.size(); i += stride) {
      auto [x, y] = s.points[i];
      if ((options.log_x && x <= 0.0) || (options.log_y && y <= 0.0)) continue;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      t.points.push_back({x, y});
      xs.lo = std::min(xs.lo, x);
      xs.hi = std::max(xs.hi, x);
      ys.lo = std::min(ys.lo, y);
      ys.hi = std::max(ys.hi, y);
    }
    if (!s.points.empty() &&
        (t.points.empty() || t.points.back() != s.points.back())) {
      auto [x, y] = s.points.back();
      if (!((options.log_x && x <= 0.0) || (options.log_y && y <= 0.0)) &&
          std::isfinite(x) && std::isfinite(y)) {
        t.points.push_back({x, y});
        xs.lo = std::min(xs.lo, x);
        xs.hi = std::max(xs.hi, x);
        ys.lo = std::min(ys.lo, y);
        ys.hi = std::max(ys.hi, y);
      }
    }
    drawn.push_back(std::move(t));
  }
  if (!std::isfinite(xs.lo)) {
    xs.lo = 0.0;
    xs.hi = 1.0;
    ys.lo = 0.0;
    ys.hi = 1.0;
  }
  if (xs.lo == xs.hi) xs.hi = xs.lo + 1.0;
  if (ys.lo == ys.hi) ys.hi = ys.lo + (ys.lo == 0.0 ? 1.0 : std::abs(ys.lo));

  auto px = [&](double x) { return margin_left + xs.to_unit(x) * plot_w; };
  auto py = [&](double y) {
    return margin_top + (1.0 - ys.to_unit(y)) * plot_h;
  };

  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << ' ' << options.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << options.width / 2 << "\" y=\"22\" font-size=\"16\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\">" << options.title
      << "</text>\n";

  // Axes box.
  out << "<rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // Five ticks per axis (positions in data space, uniform in scale space).
  for (int i = 0; i <= 4; ++i) {
    const double fx = i / 4.0;
    double xv = xs.log ? std::pow(10.0, std::log10(xs.lo) +
                                            fx * (std::log10(xs.hi) -
                                                  std::log10(xs.lo)))
                       : xs.lo + fx * (xs.hi - xs.lo);
    double yv = ys.log ? std::pow(10.0, std::log10(ys.lo) +
                                            fx * (std::log10(ys.hi) -
                                                  std::log10(ys.lo)))
                       : ys.lo + fx * (ys.hi - ys.lo);
    const double x = px(xv), y = py(yv);
    out << "<line x1=\"" << x << "\" y1=\"" << margin_top + plot_h
        << "\" x2=\"" << x << "\" y2=\"" << margin_top + plot_h + 5
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << margin_top + plot_h + 18
        << "\" font-size=\"11\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\">" << trim_number(xv) << "</text>\n";
    out << "<line x1=\"" << margin_left - 5 << "\" y1=\"" << y << "\" x2=\""
        << margin_left << "\" y2=\"" << y << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << margin_left - 8 << "\" y=\"" << y + 4
        << "\" font-size=\"11\" text-anchor=\"end\" "
        << "font-family=\"sans-serif\">" << trim_number(yv) << "</text>\n";
  }

  out << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\""
      << options.height - 12
      << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\">" << options.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << margin_top + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
      << margin_top + plot_h / 2 << ")\">" << options.y_label << "</text>\n";

  for (std::size_t s = 0; s < drawn.size(); ++s) {
    const char* color = kColors[s % (sizeof(kColors) / sizeof(kColors[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : drawn[s].points) {
      out << px(x) << ',' << py(y) << ' ';
    }
    out << "\"/>\n";
    const double ly = margin_top + 16 + 16 * static_cast<double>(s);
    out << "<line x1=\"" << margin_left + plot_w - 150 << "\" y1=\"" << ly
        << "\" x2=\"" << margin_left + plot_w - 125 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << margin_left + plot_w - 120 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << drawn[s].name
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace tassign

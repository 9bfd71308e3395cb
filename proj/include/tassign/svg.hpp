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

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tassign {

/// One polyline of a chart.
struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 960;
  int height = 600;
  // Long series are thinned to at most this many points; plots are derived
  // views and never change the CSV data they accompany.
  std::size_t max_points_per_series = 2000;
};

/// Self-contained SVG line chart (axes, ticks, legend); no external
/// dependencies or scripts.
void write_line_chart(const std::string& path,
                      const std::vector<Series>& series,
                      const ChartOptions& options);

}  // namespace tassign

// Copyright 2026 The Metastrat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef METASTRAT_SVG_CHART_H_
#define METASTRAT_SVG_CHART_H_

#include <string>
#include <vector>

namespace metastrat {

struct ChartSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  // Optional symmetric error band; empty or same length as y.
  std::vector<double> error;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  int width = 720;
  int height = 440;
};

// Self-contained SVG line chart.
std::string RenderLineChart(const std::vector<ChartSeries>& series,
                            const ChartOptions& options);

}  // namespace metastrat

#endif  // METASTRAT_SVG_CHART_H_

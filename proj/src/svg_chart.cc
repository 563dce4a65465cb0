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

#include "metastrat/svg_chart.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace metastrat {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string RenderLineChart(const std::vector<ChartSeries>& series,
                            const ChartOptions& options) {
  const double left = 70, right = 150, top = 40, bottom = 55;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  auto tx = [&](double x) { return options.log_x ? std::log10(std::max(x, 1e-12)) : x; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double e = s.error.empty() ? 0.0 : s.error[i];
      x_min = std::min(x_min, tx(s.x[i]));
      x_max = std::max(x_max, tx(s.x[i]));
      y_min = std::min(y_min, s.y[i] - e);
      y_max = std::max(y_max, s.y[i] + e);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0;
    x_max = 1;
    y_min = 0;
    y_max = 1;
  }
  if (x_max == x_min) x_max = x_min + 1;
  y_min = std::min(y_min, 0.0);
  if (y_max == y_min) y_max = y_min + 1;

  auto px = [&](double x) { return left + (tx(x) - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << options.width / 2.0 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << Escape(options.title) << "</text>\n";

  // Axes and ticks.
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = y_min + (y_max - y_min) * i / 5.0;
    out << "<line x1=\"" << left - 4 << "\" x2=\"" << left << "\" y1=\"" << py(y)
        << "\" y2=\"" << py(y) << "\" stroke=\"#333\"/>";
    out << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\">" << std::setprecision(2) << y << "</text>\n";
  }
  if (options.log_x) {
    for (int d = static_cast<int>(std::ceil(x_min)); d <= static_cast<int>(std::floor(x_max)); ++d) {
      const double x = left + (d - x_min) / (x_max - x_min) * plot_w;
      out << "<line x1=\"" << x << "\" x2=\"" << x << "\" y1=\"" << top + plot_h
          << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"#333\"/>";
      out << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
          << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = x_min + (x_max - x_min) * i / 5.0;
      const double x = left + plot_w * i / 5.0;
      out << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
          << "\" text-anchor=\"middle\">" << std::setprecision(0) << v << "</text>\n";
    }
  }
  out << std::setprecision(2);
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << options.height - 12
      << "\" text-anchor=\"middle\">" << Escape(options.x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << top + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(options.y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    const ChartSeries& c = series[s];
    if (!c.error.empty() && !c.x.empty()) {
      out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.12\" points=\"";
      for (std::size_t i = 0; i < c.x.size(); ++i) out << px(c.x[i]) << ',' << py(c.y[i] + c.error[i]) << ' ';
      for (std::size_t i = c.x.size(); i-- > 0;) out << px(c.x[i]) << ',' << py(c.y[i] - c.error[i]) << ' ';
      out << "\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < c.x.size(); ++i) out << px(c.x[i]) << ',' << py(c.y[i]) << ' ';
    out << "\"/>\n";
    const double ly = top + 14 + 18.0 * s;
    out << "<line x1=\"" << left + plot_w + 12 << "\" x2=\"" << left + plot_w + 36
        << "\" y1=\"" << ly << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>";
    out << "<text x=\"" << left + plot_w + 42 << "\" y=\"" << ly + 4 << "\">"
        << Escape(c.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace metastrat

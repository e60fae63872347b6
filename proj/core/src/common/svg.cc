// Copyright 2026 The hetrank Authors.
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

#include "hetrank/common/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hetrank {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

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
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string RenderLineChart(const std::vector<LineSeries>& series,
                            const LineChartOptions& options) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (double v : s.x) {
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
    for (double v : s.y) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (!std::isfinite(y_min)) {
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max - x_min <= 0.0) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max - y_min <= 0.0) {
    const double pad = std::max(std::abs(y_min) * 0.05, 0.5);
    y_min -= pad;
    y_max += pad;
  }

  const double left = 70.0;
  const double right = 20.0;
  const double top = 40.0;
  const double bottom = 50.0;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;
  auto px = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double y) {
    return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << " " << options.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << options.width / 2
      << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << Escape(options.title) << "</text>\n";
  out << "<rect x=\"" << Fixed(left) << "\" y=\"" << Fixed(top)
      << "\" width=\"" << Fixed(plot_w) << "\" height=\"" << Fixed(plot_h)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = x_min + (x_max - x_min) * i / kTicks;
    const double yv = y_min + (y_max - y_min) * i / kTicks;
    out << "<text x=\"" << Fixed(px(xv)) << "\" y=\""
        << Fixed(top + plot_h + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << Tick(xv) << "</text>\n";
    out << "<text x=\"" << Fixed(left - 6) << "\" y=\"" << Fixed(py(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << Tick(yv) << "</text>\n";
  }
  out << "<text x=\"" << Fixed(left + plot_w / 2) << "\" y=\""
      << options.height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">"
      << Escape(options.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << Fixed(top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 "
      << Fixed(top + plot_h / 2) << ")\">" << Escape(options.y_label)
      << "</text>\n";

  for (size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    const size_t n = std::min(s.x.size(), s.y.size());
    if (n >= 2) {
      out << "<path fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\" d=\"";
      for (size_t k = 0; k < n; ++k) {
        out << (k == 0 ? "M" : " L") << Fixed(px(s.x[k])) << ","
            << Fixed(py(s.y[k]));
      }
      out << "\"/>\n";
    }
    for (size_t k = 0; k < n; ++k) {
      out << "<circle cx=\"" << Fixed(px(s.x[k])) << "\" cy=\""
          << Fixed(py(s.y[k])) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << Fixed(left + plot_w - 8) << "\" y=\""
        << Fixed(top + 16 + 14.0 * i)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\""
        << color << "\">" << Escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hetrank

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

#ifndef HETRANK_COMMON_SVG_H_
#define HETRANK_COMMON_SVG_H_

#include <string>
#include <vector>

namespace hetrank {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 400;
};

// Renders a plain SVG document with one polyline per series. A series with a
// single point is drawn as a marker; constant ranges are padded so the output
// is always well formed.
std::string RenderLineChart(const std::vector<LineSeries>& series,
                            const LineChartOptions& options);

}  // namespace hetrank

#endif  // HETRANK_COMMON_SVG_H_

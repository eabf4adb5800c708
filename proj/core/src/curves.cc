/* Copyright 2026 The SAFit Eval Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "safit/curves.h"

#include <stdexcept>

#include <fmt/format.h>

namespace safit {

std::vector<CurvePoint> DeviationCurve(double size, int max_dev,
                                       Measure measure,
                                       const MeasureParams& params) {
  if (!(size > 0.0)) throw std::invalid_argument("box size must be positive");
  if (max_dev < 0) throw std::invalid_argument("max deviation must be >= 0");
  const BBox gt(0.5 * size, 0.5 * size, size, size);
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(max_dev) + 1);
  for (int d = 0; d <= max_dev; ++d) {
    const BBox p = gt.Translated(d, d);
    out.push_back({size, d, measure, Affinity(measure, p, gt, params)});
  }
  return out;
}

std::vector<CurvePoint> DeviationSweep(std::span<const double> sizes,
                                       int max_dev, Measure measure,
                                       const MeasureParams& params) {
  std::vector<CurvePoint> out;
  for (double s : sizes) {
    auto curve = DeviationCurve(s, max_dev, measure, params);
    out.insert(out.end(), curve.begin(), curve.end());
  }
  return out;
}

std::string CurvesToCsv(std::span<const CurvePoint> points) {
  std::string out = "size,deviation,measure,value\n";
  for (const auto& p : points) {
    out += fmt::format("{},{},{},{}\n", p.size, p.deviation,
                       MeasureName(p.measure), p.value);
  }
  return out;
}

}  // namespace safit

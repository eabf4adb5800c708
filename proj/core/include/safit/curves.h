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

#ifndef SAFIT_CURVES_H_
#define SAFIT_CURVES_H_

#include <span>
#include <string>
#include <vector>

#include "safit/metrics.h"

namespace safit {

struct CurvePoint {
  double size = 0.0;
  int deviation = 0;
  Measure measure = Measure::kIou;
  double value = 0.0;
};

// Measure between a size x size GT box and the same box shifted by (+d, +d)
// for d = 0..max_dev. Throws std::invalid_argument for size <= 0 or
// max_dev < 0.
std::vector<CurvePoint> DeviationCurve(double size, int max_dev,
                                       Measure measure,
                                       const MeasureParams& params);

// Concatenated curves for every size, in the order given.
std::vector<CurvePoint> DeviationSweep(std::span<const double> sizes,
                                       int max_dev, Measure measure,
                                       const MeasureParams& params);

// Columns: size,deviation,measure,value
std::string CurvesToCsv(std::span<const CurvePoint> points);

}  // namespace safit

#endif  // SAFIT_CURVES_H_

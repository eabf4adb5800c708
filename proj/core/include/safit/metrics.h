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

#ifndef SAFIT_METRICS_H_
#define SAFIT_METRICS_H_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "safit/bbox.h"

namespace safit {

// Thrown for unknown measure names and out-of-range measure parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Measure {
  kIou,
  kGiou,
  kDiou,
  kCiou,
  kNwd,
  kSafit,
  kSafitS,
  kSafitG,
};

inline constexpr std::array<Measure, 8> kAllMeasures = {
    Measure::kIou,  Measure::kGiou,  Measure::kDiou,   Measure::kCiou,
    Measure::kNwd,  Measure::kSafit, Measure::kSafitS, Measure::kSafitG};

std::string_view MeasureName(Measure m);
// Accepts the lower-case names used on the command line ("iou", "safit_s",
// ...). Throws ConfigError for anything else.
Measure ParseMeasure(std::string_view name);

struct SAFitParams {
  // Size-aware balance constant: a GT box of area C^2 weighs IoU and NWD
  // equally.
  double c = 32.0;
};

struct NwdParams {
  double k = 32.0;
};

// Parameters for any measure. The standalone NWD measure uses `k` when set
// and falls back to `c`; the SAFit family always binds its NWD term to C.
struct MeasureParams {
  double c = 32.0;
  std::optional<double> k;

  SAFitParams safit() const { return {c}; }
  NwdParams nwd() const { return {k.value_or(c)}; }
  void Validate() const;
};

double Iou(const BBox& p, const BBox& gt);
double Giou(const BBox& p, const BBox& gt);
double Diou(const BBox& p, const BBox& gt);
double Ciou(const BBox& p, const BBox& gt);

// Squared 2-Wasserstein distance between the Gaussian embeddings
// N(c, diag(w^2/4, h^2/4)) of the two boxes.
double WassersteinSq(const BBox& p, const BBox& gt);
double Nwd(const BBox& p, const BBox& gt, const NwdParams& params);

// Sigmoid weight on the IoU-like term: 1 / (1 + exp(-(sqrt(A_gt)/C - 1))).
// Depends on the ground truth only.
double SafitWeight(const BBox& gt, const SAFitParams& params);

double Safit(const BBox& p, const BBox& gt, const SAFitParams& params);
// Hard switch: NWD(C) when sqrt(A_gt) < C, IoU otherwise.
double SafitS(const BBox& p, const BBox& gt, const SAFitParams& params);
// Sigmoid blend of GIoU and NWD(C).
double SafitG(const BBox& p, const BBox& gt, const SAFitParams& params);

// Dispatches on `m`. Asymmetric measures treat `p` as the prediction.
double Affinity(Measure m, const BBox& p, const BBox& gt,
                const MeasureParams& params);

}  // namespace safit

#endif  // SAFIT_METRICS_H_

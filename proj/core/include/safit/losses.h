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

#ifndef SAFIT_LOSSES_H_
#define SAFIT_LOSSES_H_

#include "safit/bbox.h"
#include "safit/metrics.h"

namespace safit {

// Value of `1 - measure(p, gt)` and its partials with respect to the
// predicted box parameters. The ground truth is held constant.
struct LossGrad {
  double value = 0.0;
  double d_cx = 0.0;
  double d_cy = 0.0;
  double d_w = 0.0;
  double d_h = 0.0;
  // Set when p sits on a kink (aligned edges, touching boxes, p == gt for
  // NWD, the safit_s switch point); the partials are then a one-sided
  // subgradient.
  bool subgradient = false;
};

LossGrad Loss(Measure m, const BBox& p, const BBox& gt,
              const MeasureParams& params);

struct FdCheckResult {
  double max_rel_error = 0.0;
  // True when the configuration is flagged non-differentiable and no
  // comparison was made.
  bool skipped = false;
};

// Compares the analytic partials against central differences with the given
// step. Each partial contributes |analytic - numeric| / max(1, |analytic|).
// Throws std::invalid_argument when step <= 0.
FdCheckResult FdCheck(Measure m, const BBox& p, const BBox& gt,
                      const MeasureParams& params, double step);

}  // namespace safit

#endif  // SAFIT_LOSSES_H_

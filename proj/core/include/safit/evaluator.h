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

#ifndef SAFIT_EVALUATOR_H_
#define SAFIT_EVALUATOR_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "safit/dataset.h"
#include "safit/metrics.h"
#include "safit/taxonomy.h"

namespace safit {

// Area bins used as report cells: index 0 is "all", 1..5 follow ScaleLevel.
inline constexpr std::size_t kNumAreaBins = 6;
std::string_view AreaBinName(std::size_t bin);
AreaRange AreaBinRange(std::size_t bin);

std::vector<double> DefaultThresholds();  // 0.50, 0.55, ..., 0.95

struct EvalConfig {
  Measure measure = Measure::kSafit;
  MeasureParams params;
  std::vector<double> thresholds = DefaultThresholds();
  // Recall sample points r_i = i / (recall_points - 1).
  int recall_points = 101;
  int max_detections = 300;
  // When false, interpolated GT boxes are treated as ignored.
  bool include_interpolated = true;
  std::optional<Modality> modality;
  std::optional<LightVision> light_vision;
  // Empty means every class present in the ground truth.
  std::vector<std::int64_t> classes;
  bool per_class = true;
  bool per_light_vision = true;
  int workers = 1;

  // Throws ConfigError.
  void Validate() const;
};

// Summary numbers for one slice of the data. nullopt marks a cell with no
// non-ignored ground truth.
struct MetricSummary {
  std::optional<double> ap;
  std::optional<double> ap50;
  std::optional<double> ap75;
  std::optional<double> ar;
  std::array<std::optional<double>, 5> ap_scale;  // by ScaleLevel
  std::array<std::optional<double>, 5> ar_scale;

  friend bool operator==(const MetricSummary&,
                         const MetricSummary&) = default;
};

// Per (class, area bin, threshold) result.
struct EvalCell {
  std::int64_t class_id = 0;
  std::size_t bin = 0;
  std::size_t threshold_index = 0;
  std::size_t num_gt = 0;  // non-ignored GT
  std::optional<double> ap;
  std::optional<double> recall;

  friend bool operator==(const EvalCell&, const EvalCell&) = default;
};

struct EvalReport {
  // False when the ground truth (after filtering) contains no usable boxes.
  bool defined = false;
  Measure measure = Measure::kSafit;
  MeasureParams params;
  std::vector<double> thresholds;
  int max_detections = 0;
  std::vector<std::int64_t> classes;
  MetricSummary overall;
  std::map<std::int64_t, MetricSummary> per_class;
  std::map<LightVision, MetricSummary> per_light_vision;
  std::vector<EvalCell> cells;
};

enum class MatchOutcome { kTruePositive, kFalsePositive, kIgnored };

struct DetectionMatch {
  std::size_t detection = 0;  // index into the input span
  std::optional<std::size_t> gt;
  MatchOutcome outcome = MatchOutcome::kFalsePositive;
};

// Greedy matching for one image and class. Detections are visited by
// descending score (stable on input order). Each takes the unmatched GT with
// the highest affinity >= threshold, preferring non-ignored GT; affinity ties
// go to the lowest GT index. Detections matched to ignored GT are ignored;
// unmatched detections are false positives unless `ignore_unmatched` marks
// them ignored. Results are in visiting order.
std::vector<DetectionMatch> MatchDetections(
    std::span<const Detection> detections, std::span<const Annotation> gts,
    std::span<const bool> gt_ignored, Measure measure,
    const MeasureParams& params, double threshold,
    std::span<const bool> ignore_unmatched = {});

// 101-point (or `recall_points`) interpolated AP from per-detection
// outcomes already sorted by descending score. Returns nullopt when
// num_gt == 0.
std::optional<double> InterpolatedAp(std::span<const MatchOutcome> sorted,
                                     std::size_t num_gt, int recall_points);

EvalReport Evaluate(const GroundTruth& gt, const Predictions& preds,
                    const EvalConfig& config);

}  // namespace safit

#endif  // SAFIT_EVALUATOR_H_

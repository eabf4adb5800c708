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

#include "safit/evaluator.h"

#include <algorithm>
#include <atomic>
#include <limits>
#include <memory>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>

namespace safit {
namespace {

// Detections and GT for one (image, class) pair, in input order.
struct PairTask {
  std::int64_t image_id = 0;
  std::int64_t class_id = 0;
  std::vector<Detection> dets;
  std::vector<Annotation> gts;
};

// Matching outcome of one pair for every (bin, threshold).
struct PairResult {
  std::vector<double> scores;  // kept detections, descending score
  // outcomes[bin][threshold][detection]
  std::vector<std::vector<std::vector<MatchOutcome>>> outcomes;
  std::array<std::size_t, kNumAreaBins> num_gt{};
};

std::vector<std::size_t> ScoreOrder(std::span<const Detection> dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].score > dets[b].score;
                   });
  return order;
}

// Core greedy matcher over a precomputed affinity matrix (row per detection
// in visiting order, column per GT).
std::vector<DetectionMatch> GreedyMatch(
    std::span<const std::size_t> det_order,
    const std::vector<std::vector<double>>& affinity,
    std::span<const bool> gt_ignored, double threshold,
    std::span<const bool> ignore_unmatched) {
  const std::size_t num_gt = gt_ignored.size();
  // Non-ignored GT first; original index order within each group.
  std::vector<std::size_t> gt_order;
  gt_order.reserve(num_gt);
  for (std::size_t g = 0; g < num_gt; ++g) {
    if (!gt_ignored[g]) gt_order.push_back(g);
  }
  for (std::size_t g = 0; g < num_gt; ++g) {
    if (gt_ignored[g]) gt_order.push_back(g);
  }

  std::vector<bool> taken(num_gt, false);
  std::vector<DetectionMatch> out;
  out.reserve(det_order.size());
  for (std::size_t row = 0; row < det_order.size(); ++row) {
    const std::size_t d = det_order[row];
    std::optional<std::size_t> best;
    double best_aff = 0.0;
    for (std::size_t g : gt_order) {
      if (taken[g]) continue;
      if (best && !gt_ignored[*best] && gt_ignored[g]) break;
      const double a = affinity[row][g];
      if (a < threshold) continue;
      if (!best || a > best_aff) {
        best = g;
        best_aff = a;
      }
    }
    DetectionMatch m;
    m.detection = d;
    if (best) {
      taken[*best] = true;
      m.gt = best;
      m.outcome = gt_ignored[*best] ? MatchOutcome::kIgnored
                                    : MatchOutcome::kTruePositive;
    } else {
      const bool ign = !ignore_unmatched.empty() && ignore_unmatched[d];
      m.outcome = ign ? MatchOutcome::kIgnored : MatchOutcome::kFalsePositive;
    }
    out.push_back(m);
  }
  return out;
}

PairResult EvaluatePair(const PairTask& task, const EvalConfig& config) {
  PairResult result;
  std::vector<std::size_t> order = ScoreOrder(task.dets);
  if (order.size() > static_cast<std::size_t>(config.max_detections)) {
    order.resize(static_cast<std::size_t>(config.max_detections));
  }
  result.scores.reserve(order.size());
  for (std::size_t d : order) result.scores.push_back(task.dets[d].score);

  std::vector<std::vector<double>> affinity(order.size());
  for (std::size_t row = 0; row < order.size(); ++row) {
    affinity[row].reserve(task.gts.size());
    for (const auto& g : task.gts) {
      affinity[row].push_back(Affinity(config.measure, task.dets[order[row]].bbox,
                                       g.bbox, config.params));
    }
  }

  const std::size_t num_gt = task.gts.size();
  std::unique_ptr<bool[]> gt_ignored(new bool[num_gt == 0 ? 1 : num_gt]);
  std::unique_ptr<bool[]> det_outside(
      new bool[task.dets.empty() ? 1 : task.dets.size()]);
  result.outcomes.resize(kNumAreaBins);
  for (std::size_t bin = 0; bin < kNumAreaBins; ++bin) {
    const AreaRange range = AreaBinRange(bin);
    std::size_t counted = 0;
    for (std::size_t g = 0; g < num_gt; ++g) {
      const Annotation& a = task.gts[g];
      const bool ign = a.ignore ||
                       (a.interpolated && !config.include_interpolated) ||
                       !range.Contains(a.bbox.area());
      gt_ignored[g] = ign;
      if (!ign) ++counted;
    }
    result.num_gt[bin] = counted;
    for (std::size_t d = 0; d < task.dets.size(); ++d) {
      det_outside[d] = !range.Contains(task.dets[d].bbox.area());
    }
    auto& per_threshold = result.outcomes[bin];
    per_threshold.resize(config.thresholds.size());
    for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
      const auto matches = GreedyMatch(
          order, affinity, std::span<const bool>(gt_ignored.get(), num_gt),
          config.thresholds[t],
          std::span<const bool>(det_outside.get(), task.dets.size()));
      auto& outcomes = per_threshold[t];
      outcomes.reserve(matches.size());
      for (const auto& m : matches) outcomes.push_back(m.outcome);
    }
  }
  return result;
}

template <typename Fn>
void ParallelFor(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
}

struct SubsetResult {
  std::vector<EvalCell> cells;
  std::size_t total_gt = 0;
};

// Evaluates the images accepted by `keep_image`. Cells are ordered by
// (class, bin, threshold).
template <typename KeepImage>
SubsetResult EvaluateSubset(const GroundTruth& gt, const Predictions& preds,
                            const EvalConfig& config,
                            const std::vector<std::int64_t>& classes,
                            KeepImage&& keep_image) {
  std::vector<std::int64_t> image_ids;
  for (const auto& img : gt.images) {
    if (keep_image(img)) image_ids.push_back(img.id);
  }
  std::sort(image_ids.begin(), image_ids.end());
  std::unordered_map<std::int64_t, std::size_t> image_pos;
  for (std::size_t i = 0; i < image_ids.size(); ++i) {
    image_pos.emplace(image_ids[i], i);
  }
  std::unordered_map<std::int64_t, std::size_t> class_pos;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    class_pos.emplace(classes[c], c);
  }

  // tasks indexed by class * num_images + image
  const std::size_t num_images = image_ids.size();
  std::vector<PairTask> tasks(classes.size() * num_images);
  SubsetResult out;
  for (const auto& a : gt.annotations) {
    auto ip = image_pos.find(a.image_id);
    auto cp = class_pos.find(a.class_id);
    if (ip == image_pos.end() || cp == class_pos.end()) continue;
    tasks[cp->second * num_images + ip->second].gts.push_back(a);
    ++out.total_gt;
  }
  for (const auto& d : preds.detections) {
    auto ip = image_pos.find(d.image_id);
    auto cp = class_pos.find(d.class_id);
    if (ip == image_pos.end() || cp == class_pos.end()) continue;
    tasks[cp->second * num_images + ip->second].dets.push_back(d);
  }

  std::vector<PairResult> results(tasks.size());
  ParallelFor(tasks.size(), config.workers, [&](std::size_t i) {
    if (tasks[i].dets.empty() && tasks[i].gts.empty()) return;
    results[i] = EvaluatePair(tasks[i], config);
  });

  const std::size_t num_thr = config.thresholds.size();
  out.cells.reserve(classes.size() * kNumAreaBins * num_thr);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    // Pool detections in image order, then stable sort by score. The order
    // is shared by every bin and threshold.
    struct Pooled {
      double score;
      std::size_t image;
      std::size_t det;
    };
    std::vector<Pooled> pooled;
    for (std::size_t i = 0; i < num_images; ++i) {
      const PairResult& r = results[c * num_images + i];
      if (r.outcomes.empty()) continue;
      for (std::size_t d = 0; d < r.scores.size(); ++d) {
        pooled.push_back({r.scores[d], i, d});
      }
    }
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const Pooled& a, const Pooled& b) {
                       return a.score > b.score;
                     });
    for (std::size_t bin = 0; bin < kNumAreaBins; ++bin) {
      std::size_t num_gt = 0;
      for (std::size_t i = 0; i < num_images; ++i) {
        const PairResult& r = results[c * num_images + i];
        if (!r.outcomes.empty()) num_gt += r.num_gt[bin];
      }
      for (std::size_t t = 0; t < num_thr; ++t) {
        std::vector<MatchOutcome> sorted;
        sorted.reserve(pooled.size());
        std::size_t tp = 0;
        for (const Pooled& p : pooled) {
          const MatchOutcome o =
              results[c * num_images + p.image].outcomes[bin][t][p.det];
          sorted.push_back(o);
          if (o == MatchOutcome::kTruePositive) ++tp;
        }
        EvalCell cell;
        cell.class_id = classes[c];
        cell.bin = bin;
        cell.threshold_index = t;
        cell.num_gt = num_gt;
        cell.ap = InterpolatedAp(sorted, num_gt, config.recall_points);
        if (num_gt > 0) {
          cell.recall =
              static_cast<double>(tp) / static_cast<double>(num_gt);
        }
        out.cells.push_back(cell);
      }
    }
  }
  return out;
}

std::optional<double> MeanOf(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

std::optional<std::size_t> ThresholdIndex(const std::vector<double>& thr,
                                          double value) {
  for (std::size_t i = 0; i < thr.size(); ++i) {
    if (std::abs(thr[i] - value) < 1e-9) return i;
  }
  return std::nullopt;
}

// Means over thresholds and classes of the defined cells matching the
// filter.
MetricSummary Summarize(const std::vector<EvalCell>& cells,
                        const std::vector<double>& thresholds,
                        std::optional<std::int64_t> only_class) {
  const auto i50 = ThresholdIndex(thresholds, 0.5);
  const auto i75 = ThresholdIndex(thresholds, 0.75);
  std::array<std::vector<double>, kNumAreaBins> ap;
  std::array<std::vector<double>, kNumAreaBins> ar;
  std::vector<double> ap50;
  std::vector<double> ap75;
  for (const auto& cell : cells) {
    if (only_class && cell.class_id != *only_class) continue;
    if (!cell.ap) continue;
    ap[cell.bin].push_back(*cell.ap);
    ar[cell.bin].push_back(*cell.recall);
    if (cell.bin == 0) {
      if (i50 && cell.threshold_index == *i50) ap50.push_back(*cell.ap);
      if (i75 && cell.threshold_index == *i75) ap75.push_back(*cell.ap);
    }
  }
  MetricSummary s;
  s.ap = MeanOf(ap[0]);
  s.ar = MeanOf(ar[0]);
  s.ap50 = MeanOf(ap50);
  s.ap75 = MeanOf(ap75);
  for (std::size_t b = 1; b < kNumAreaBins; ++b) {
    s.ap_scale[b - 1] = MeanOf(ap[b]);
    s.ar_scale[b - 1] = MeanOf(ar[b]);
  }
  return s;
}

}  // namespace

std::string_view AreaBinName(std::size_t bin) {
  if (bin == 0) return "all";
  return ScaleLevelName(kAllScaleLevels.at(bin - 1));
}

AreaRange AreaBinRange(std::size_t bin) {
  if (bin == 0) return {0.0, std::numeric_limits<double>::infinity()};
  return ScaleAreaRange(kAllScaleLevels.at(bin - 1));
}

std::vector<double> DefaultThresholds() {
  return {0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
}

void EvalConfig::Validate() const {
  params.Validate();
  if (thresholds.empty()) throw ConfigError("threshold list is empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double t = thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) {
      throw ConfigError(fmt::format("threshold {} outside (0, 1]", t));
    }
    if (i > 0 && !(t > thresholds[i - 1])) {
      throw ConfigError("thresholds must be strictly increasing");
    }
  }
  if (max_detections < 1) throw ConfigError("max_detections must be >= 1");
  if (recall_points < 2) throw ConfigError("recall_points must be >= 2");
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

std::vector<DetectionMatch> MatchDetections(
    std::span<const Detection> detections, std::span<const Annotation> gts,
    std::span<const bool> gt_ignored, Measure measure,
    const MeasureParams& params, double threshold,
    std::span<const bool> ignore_unmatched) {
  if (gt_ignored.size() != gts.size()) {
    throw std::invalid_argument("gt_ignored must match gts in size");
  }
  if (!ignore_unmatched.empty() && ignore_unmatched.size() != detections.size()) {
    throw std::invalid_argument("ignore_unmatched must match detections");
  }
  const std::vector<std::size_t> order = ScoreOrder(detections);
  std::vector<std::vector<double>> affinity(order.size());
  for (std::size_t row = 0; row < order.size(); ++row) {
    for (const auto& g : gts) {
      affinity[row].push_back(
          Affinity(measure, detections[order[row]].bbox, g.bbox, params));
    }
  }
  return GreedyMatch(order, affinity, gt_ignored, threshold, ignore_unmatched);
}

std::optional<double> InterpolatedAp(std::span<const MatchOutcome> sorted,
                                     std::size_t num_gt, int recall_points) {
  if (num_gt == 0) return std::nullopt;
  std::vector<double> precision;
  std::vector<double> recall;
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (MatchOutcome o : sorted) {
    if (o == MatchOutcome::kIgnored) continue;
    if (o == MatchOutcome::kTruePositive) {
      ++tp;
    } else {
      ++fp;
    }
    recall.push_back(static_cast<double>(tp) / static_cast<double>(num_gt));
    precision.push_back(static_cast<double>(tp) / static_cast<double>(tp + fp));
  }
  // Precision envelope: max precision at any recall >= this one.
  for (std::size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double sum = 0.0;
  const double denom = static_cast<double>(recall_points - 1);
  for (int k = 0; k < recall_points; ++k) {
    const double r = static_cast<double>(k) / denom;
    auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) {
      sum += precision[static_cast<std::size_t>(it - recall.begin())];
    }
  }
  return sum / static_cast<double>(recall_points);
}

EvalReport Evaluate(const GroundTruth& gt, const Predictions& preds,
                    const EvalConfig& config) {
  config.Validate();
  EvalReport report;
  report.measure = config.measure;
  report.params = config.params;
  report.thresholds = config.thresholds;
  report.max_detections = config.max_detections;
  report.classes = config.classes.empty() ? gt.ClassIds() : config.classes;
  std::sort(report.classes.begin(), report.classes.end());
  report.classes.erase(
      std::unique(report.classes.begin(), report.classes.end()),
      report.classes.end());

  auto light_of = [&gt](const ImageInfo& img) -> std::optional<LightVision> {
    const SequenceMeta* seq = gt.FindSequence(img.sequence_id);
    return seq ? seq->light_vision : std::nullopt;
  };
  auto base_keep = [&](const ImageInfo& img) {
    if (config.modality && img.modality != *config.modality) return false;
    if (config.light_vision && light_of(img) != config.light_vision) {
      return false;
    }
    return true;
  };

  SubsetResult main =
      EvaluateSubset(gt, preds, config, report.classes, base_keep);
  bool any_counted = false;
  for (const auto& cell : main.cells) {
    if (cell.bin == 0 && cell.num_gt > 0) any_counted = true;
  }
  report.defined = main.total_gt > 0 && any_counted;
  if (!report.defined) return report;

  report.cells = std::move(main.cells);
  report.overall = Summarize(report.cells, config.thresholds, std::nullopt);
  if (config.per_class) {
    for (std::int64_t cls : report.classes) {
      report.per_class[cls] =
          Summarize(report.cells, config.thresholds, cls);
    }
  }
  if (config.per_light_vision) {
    for (LightVision lv : kAllLightVisions) {
      if (config.light_vision && *config.light_vision != lv) continue;
      bool has_images = false;
      for (const auto& img : gt.images) {
        if (base_keep(img) && light_of(img) == lv) {
          has_images = true;
          break;
        }
      }
      if (!has_images) continue;
      SubsetResult sub = EvaluateSubset(
          gt, preds, config, report.classes, [&](const ImageInfo& img) {
            return base_keep(img) && light_of(img) == lv;
          });
      report.per_light_vision[lv] =
          Summarize(sub.cells, config.thresholds, std::nullopt);
    }
  }
  return report;
}

}  // namespace safit

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

#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "safit/metrics.h"

namespace safit::testing {

double PixelCountIou(const BBox& a, const BBox& b) {
  const int x0 = static_cast<int>(std::floor(std::min(a.x1(), b.x1())));
  const int x1 = static_cast<int>(std::ceil(std::max(a.x2(), b.x2())));
  const int y0 = static_cast<int>(std::floor(std::min(a.y1(), b.y1())));
  const int y1 = static_cast<int>(std::ceil(std::max(a.y2(), b.y2())));
  long inter = 0;
  long uni = 0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      const bool in_a = px > a.x1() && px < a.x2() && py > a.y1() && py < a.y2();
      const bool in_b = px > b.x1() && px < b.x2() && py > b.y1() && py < b.y2();
      inter += (in_a && in_b) ? 1 : 0;
      uni += (in_a || in_b) ? 1 : 0;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

enum class Outcome { kTp, kFp, kIgnored };

struct Scored {
  double score;
  Outcome outcome;
};

}  // namespace

std::vector<OracleCell> BruteForceEvaluate(const GroundTruth& gt,
                                           const Predictions& preds,
                                           const EvalConfig& config) {
  std::set<std::int64_t> image_ids;
  for (const auto& img : gt.images) {
    if (config.modality && img.modality != *config.modality) continue;
    image_ids.insert(img.id);
  }
  std::vector<std::int64_t> classes = config.classes;
  if (classes.empty()) classes = gt.ClassIds();

  std::vector<OracleCell> cells;
  for (std::int64_t cls : classes) {
    for (std::size_t bin = 0; bin < kNumAreaBins; ++bin) {
      const AreaRange range = AreaBinRange(bin);
      for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
        const double thr = config.thresholds[t];
        std::vector<Scored> pooled;
        std::size_t npos = 0;
        for (std::int64_t img : image_ids) {
          std::vector<Annotation> gts;
          for (const auto& a : gt.annotations) {
            if (a.image_id == img && a.class_id == cls) gts.push_back(a);
          }
          std::vector<Detection> dets;
          for (const auto& d : preds.detections) {
            if (d.image_id == img && d.class_id == cls) dets.push_back(d);
          }
          std::stable_sort(dets.begin(), dets.end(),
                           [](const Detection& a, const Detection& b) {
                             return a.score > b.score;
                           });
          if (dets.size() > static_cast<std::size_t>(config.max_detections)) {
            dets.resize(static_cast<std::size_t>(config.max_detections));
          }
          std::vector<bool> ignored(gts.size());
          for (std::size_t g = 0; g < gts.size(); ++g) {
            ignored[g] = gts[g].ignore ||
                         (gts[g].interpolated && !config.include_interpolated) ||
                         !range.Contains(gts[g].bbox.area());
            if (!ignored[g]) ++npos;
          }
          std::vector<bool> used(gts.size(), false);
          for (const auto& d : dets) {
            // Pass 1: best non-ignored candidate; pass 2: best ignored one.
            std::optional<std::size_t> pick;
            for (int pass = 0; pass < 2 && !pick; ++pass) {
              double best = -1.0;
              for (std::size_t g = 0; g < gts.size(); ++g) {
                if (used[g] || ignored[g] != (pass == 1)) continue;
                const double aff =
                    Affinity(config.measure, d.bbox, gts[g].bbox, config.params);
                if (aff >= thr && aff > best) {
                  best = aff;
                  pick = g;
                }
              }
            }
            Outcome o;
            if (pick) {
              used[*pick] = true;
              o = ignored[*pick] ? Outcome::kIgnored : Outcome::kTp;
            } else {
              o = range.Contains(d.bbox.area()) ? Outcome::kFp
                                                : Outcome::kIgnored;
            }
            pooled.push_back({d.score, o});
          }
        }
        std::stable_sort(pooled.begin(), pooled.end(),
                         [](const Scored& a, const Scored& b) {
                           return a.score > b.score;
                         });

        OracleCell cell;
        cell.class_id = cls;
        cell.bin = bin;
        cell.threshold_index = t;
        if (npos > 0) {
          // Every score cut k: counts over the top-k detections.
          std::vector<std::pair<double, double>> pr;  // (recall, precision)
          for (std::size_t k = 1; k <= pooled.size(); ++k) {
            std::size_t tp = 0;
            std::size_t fp = 0;
            for (std::size_t i = 0; i < k; ++i) {
              if (pooled[i].outcome == Outcome::kTp) ++tp;
              if (pooled[i].outcome == Outcome::kFp) ++fp;
            }
            if (tp + fp == 0) continue;
            pr.emplace_back(static_cast<double>(tp) / static_cast<double>(npos),
                            static_cast<double>(tp) /
                                static_cast<double>(tp + fp));
          }
          double sum = 0.0;
          const int n = config.recall_points;
          for (int k = 0; k < n; ++k) {
            const double r = static_cast<double>(k) / static_cast<double>(n - 1);
            double best = 0.0;
            for (const auto& [rec, prec] : pr) {
              if (rec >= r) best = std::max(best, prec);
            }
            sum += best;
          }
          cell.ap = sum / static_cast<double>(n);
          cell.recall = pr.empty() ? 0.0 : pr.back().first;
        }
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

std::optional<double> OracleMeanAp(const std::vector<OracleCell>& cells) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : cells) {
    if (c.bin != 0 || !c.ap) continue;
    sum += *c.ap;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace safit::testing

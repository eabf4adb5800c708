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

#include <random>

#include <benchmark/benchmark.h>

#include "safit/evaluator.h"

namespace safit {
namespace {

// Dense synthetic frames: `per_image` GT boxes with two jittered
// detections each plus clutter.
std::pair<GroundTruth, Predictions> Synthetic(int images, int per_image) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(10.0, 630.0);
  std::uniform_real_distribution<double> size(2.0, 40.0);
  std::uniform_real_distribution<double> jitter(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GroundTruth gt;
  gt.categories = {{1, "a"}, {2, "b"}};
  gt.sequences.push_back({"s", "", LightVision::kHigh, 25.0, 640, 640});
  Predictions preds;
  std::int64_t ann_id = 1;
  for (int img = 1; img <= images; ++img) {
    gt.images.push_back({img, "", "s", img, Modality::kVisible, 640, 640});
    for (int k = 0; k < per_image; ++k) {
      Annotation a;
      a.id = ann_id++;
      a.image_id = img;
      a.sequence_id = "s";
      a.frame_id = img;
      a.class_id = 1 + k % 2;
      a.bbox = BBox(pos(rng), pos(rng), size(rng), size(rng));
      gt.annotations.push_back(a);
      for (int d = 0; d < 2; ++d) {
        Detection det;
        det.image_id = img;
        det.frame_id = img;
        det.class_id = a.class_id;
        det.bbox = a.bbox.Translated(jitter(rng), jitter(rng));
        det.score = unit(rng);
        preds.detections.push_back(det);
      }
    }
  }
  gt.Reindex();
  return {gt, preds};
}

void BM_Evaluate(benchmark::State& state) {
  const auto [gt, preds] = Synthetic(static_cast<int>(state.range(0)), 50);
  EvalConfig config;
  config.workers = static_cast<int>(state.range(1));
  config.per_light_vision = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Evaluate(gt, preds, config));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(preds.detections.size()));
}
BENCHMARK(BM_Evaluate)
    ->Args({50, 1})
    ->Args({50, 4})
    ->Args({200, 1})
    ->Args({200, 4})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace safit

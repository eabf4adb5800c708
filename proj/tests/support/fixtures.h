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

#ifndef SAFIT_TESTS_SUPPORT_FIXTURES_H_
#define SAFIT_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "safit/dataset.h"

namespace safit::testing {

// Builds in-memory datasets with the denormalised annotation fields filled.
class FixtureBuilder {
 public:
  FixtureBuilder& Sequence(const std::string& id,
                           std::optional<LightVision> light = std::nullopt,
                           const std::string& scene = "");
  FixtureBuilder& Image(std::int64_t id, const std::string& sequence = "seq",
                        std::int64_t frame = -1,
                        Modality modality = Modality::kVisible,
                        int width = 640, int height = 512);
  FixtureBuilder& Category(std::int64_t id, const std::string& name = "");
  FixtureBuilder& Gt(std::int64_t image_id, std::int64_t class_id,
                     const BBox& box, std::optional<std::int64_t> track = {},
                     bool ignore = false, bool interpolated = false);
  FixtureBuilder& Det(std::int64_t image_id, std::int64_t class_id,
                      const BBox& box, double score);

  GroundTruth gt() const;
  Predictions preds() const { return preds_; }

 private:
  GroundTruth gt_;
  Predictions preds_;
  std::int64_t next_ann_id_ = 1;
};

// Every GT box predicted exactly with score 1.
std::pair<GroundTruth, Predictions> PerfectDetectorFixture();

// Three images, five GT boxes, one false positive and one missed box.
std::pair<GroundTruth, Predictions> MicroFixture();

// Random fixture: `images` images, each with up to 4 GT and 6 detections over
// two classes and mixed scales; scores are distinct with probability 1.
std::pair<GroundTruth, Predictions> RandomMicroFixture(std::mt19937_64& rng,
                                                       int images = 3);

}  // namespace safit::testing

#endif  // SAFIT_TESTS_SUPPORT_FIXTURES_H_

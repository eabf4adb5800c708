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

#ifndef SAFIT_STATS_H_
#define SAFIT_STATS_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "safit/dataset.h"
#include "safit/taxonomy.h"

namespace safit {

struct SequenceStats {
  std::string sequence_id;
  std::string scene;
  std::optional<LightVision> light_vision;
  std::size_t frames = 0;  // images, counting each modality separately
  std::size_t annotations = 0;
  double density = 0.0;  // annotations / frames
  DensityLevel density_level = DensityLevel::kSparse;
};

struct DatasetStats {
  std::vector<SequenceStats> sequences;  // ordered by sequence id
  // class id -> counts per ScaleLevel (indexed by enum value)
  std::map<std::int64_t, std::array<std::size_t, 5>> class_scale_histogram;
  std::array<std::size_t, 5> scale_totals{};
  std::array<std::size_t, 3> density_level_sequences{};
  // annotation counts per LightVision; sequences without the attribute are
  // tallied in `unlabelled_light_annotations`.
  std::array<std::size_t, 4> light_annotations{};
  std::size_t unlabelled_light_annotations = 0;
  std::size_t total_images = 0;
  std::size_t total_annotations = 0;
  std::size_t interpolated_annotations = 0;
  std::size_t total_sequences = 0;
};

DatasetStats ComputeDatasetStats(const GroundTruth& gt);

std::string StatsToJson(const DatasetStats& stats);
// Flat rows: section,key,subkey,value
std::string StatsToCsv(const DatasetStats& stats);

}  // namespace safit

#endif  // SAFIT_STATS_H_

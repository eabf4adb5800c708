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

#ifndef SAFIT_TAXONOMY_H_
#define SAFIT_TAXONOMY_H_

#include <array>
#include <limits>
#include <optional>
#include <string_view>

#include "safit/bbox.h"

namespace safit {

// Area bins, left-closed: [1,8^2), [8^2,16^2), [16^2,32^2), [32^2,96^2),
// [96^2,inf). Areas below 1 px^2 also fall into kExtremelyTiny so the bins
// partition (0,inf).
enum class ScaleLevel { kExtremelyTiny, kTiny, kSmall, kMedium, kLarge };

inline constexpr std::array<ScaleLevel, 5> kAllScaleLevels = {
    ScaleLevel::kExtremelyTiny, ScaleLevel::kTiny, ScaleLevel::kSmall,
    ScaleLevel::kMedium, ScaleLevel::kLarge};

struct AreaRange {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool Contains(double area) const { return area >= lo && area < hi; }
};

AreaRange ScaleAreaRange(ScaleLevel level);
ScaleLevel ScaleLevelOfArea(double area);
inline ScaleLevel ScaleLevelOf(const BBox& b) {
  return ScaleLevelOfArea(b.area());
}
std::string_view ScaleLevelName(ScaleLevel level);
std::optional<ScaleLevel> ParseScaleLevel(std::string_view name);

// Mean annotations per frame: [0,10) sparse, [10,50) medium, [50,inf) dense.
enum class DensityLevel { kSparse, kMedium, kDense };

inline constexpr std::array<DensityLevel, 3> kAllDensityLevels = {
    DensityLevel::kSparse, DensityLevel::kMedium, DensityLevel::kDense};

// Throws std::invalid_argument for negative or NaN input.
DensityLevel DensityLevelOf(double mean_annotations_per_frame);
std::string_view DensityLevelName(DensityLevel level);

enum class LightVision { kHigh, kMedium, kLow, kInvisible };

inline constexpr std::array<LightVision, 4> kAllLightVisions = {
    LightVision::kHigh, LightVision::kMedium, LightVision::kLow,
    LightVision::kInvisible};

std::string_view LightVisionName(LightVision lv);
std::optional<LightVision> ParseLightVision(std::string_view name);

enum class Modality { kVisible, kThermal };

std::string_view ModalityName(Modality m);
std::optional<Modality> ParseModality(std::string_view name);

}  // namespace safit

#endif  // SAFIT_TAXONOMY_H_

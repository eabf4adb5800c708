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

#include "safit/taxonomy.h"

#include <cmath>
#include <stdexcept>

namespace safit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename Enum, std::size_t N, typename NameFn>
std::optional<Enum> ParseByName(const std::array<Enum, N>& all,
                                std::string_view name, NameFn name_of) {
  for (Enum e : all) {
    if (name_of(e) == name) return e;
  }
  return std::nullopt;
}

}  // namespace

AreaRange ScaleAreaRange(ScaleLevel level) {
  switch (level) {
    case ScaleLevel::kExtremelyTiny:
      return {0.0, 64.0};
    case ScaleLevel::kTiny:
      return {64.0, 256.0};
    case ScaleLevel::kSmall:
      return {256.0, 1024.0};
    case ScaleLevel::kMedium:
      return {1024.0, 9216.0};
    case ScaleLevel::kLarge:
      return {9216.0, kInf};
  }
  return {};
}

ScaleLevel ScaleLevelOfArea(double area) {
  if (area < 64.0) return ScaleLevel::kExtremelyTiny;
  if (area < 256.0) return ScaleLevel::kTiny;
  if (area < 1024.0) return ScaleLevel::kSmall;
  if (area < 9216.0) return ScaleLevel::kMedium;
  return ScaleLevel::kLarge;
}

std::string_view ScaleLevelName(ScaleLevel level) {
  switch (level) {
    case ScaleLevel::kExtremelyTiny:
      return "extremely_tiny";
    case ScaleLevel::kTiny:
      return "tiny";
    case ScaleLevel::kSmall:
      return "small";
    case ScaleLevel::kMedium:
      return "medium";
    case ScaleLevel::kLarge:
      return "large";
  }
  return "unknown";
}

std::optional<ScaleLevel> ParseScaleLevel(std::string_view name) {
  return ParseByName(kAllScaleLevels, name, ScaleLevelName);
}

DensityLevel DensityLevelOf(double mean_annotations_per_frame) {
  if (!(mean_annotations_per_frame >= 0.0)) {
    throw std::invalid_argument("annotation density must be non-negative");
  }
  if (mean_annotations_per_frame < 10.0) return DensityLevel::kSparse;
  if (mean_annotations_per_frame < 50.0) return DensityLevel::kMedium;
  return DensityLevel::kDense;
}

std::string_view DensityLevelName(DensityLevel level) {
  switch (level) {
    case DensityLevel::kSparse:
      return "sparse";
    case DensityLevel::kMedium:
      return "medium";
    case DensityLevel::kDense:
      return "dense";
  }
  return "unknown";
}

std::string_view LightVisionName(LightVision lv) {
  switch (lv) {
    case LightVision::kHigh:
      return "high";
    case LightVision::kMedium:
      return "medium";
    case LightVision::kLow:
      return "low";
    case LightVision::kInvisible:
      return "invisible";
  }
  return "unknown";
}

std::optional<LightVision> ParseLightVision(std::string_view name) {
  return ParseByName(kAllLightVisions, name, LightVisionName);
}

std::string_view ModalityName(Modality m) {
  return m == Modality::kVisible ? "visible" : "thermal";
}

std::optional<Modality> ParseModality(std::string_view name) {
  if (name == "visible") return Modality::kVisible;
  if (name == "thermal") return Modality::kThermal;
  return std::nullopt;
}

}  // namespace safit

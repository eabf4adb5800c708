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

#include "safit/stats.h"

#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace safit {

DatasetStats ComputeDatasetStats(const GroundTruth& gt) {
  DatasetStats stats;
  std::map<std::string, SequenceStats> per_seq;
  for (const auto& s : gt.sequences) {
    auto& ss = per_seq[s.id];
    ss.sequence_id = s.id;
    ss.scene = s.scene;
    ss.light_vision = s.light_vision;
  }
  for (const auto& img : gt.images) {
    auto& ss = per_seq[img.sequence_id];
    ss.sequence_id = img.sequence_id;
    ++ss.frames;
  }
  for (const auto& a : gt.annotations) {
    auto& ss = per_seq[a.sequence_id];
    ss.sequence_id = a.sequence_id;
    ++ss.annotations;

    const auto level = static_cast<std::size_t>(ScaleLevelOf(a.bbox));
    auto [it, inserted] = stats.class_scale_histogram.try_emplace(a.class_id);
    ++it->second[level];
    ++stats.scale_totals[level];
    if (a.interpolated) ++stats.interpolated_annotations;
  }

  for (auto& [id, ss] : per_seq) {
    ss.density = ss.frames == 0 ? 0.0
                                : static_cast<double>(ss.annotations) /
                                      static_cast<double>(ss.frames);
    ss.density_level = DensityLevelOf(ss.density);
    ++stats.density_level_sequences[static_cast<std::size_t>(ss.density_level)];
    if (ss.light_vision) {
      stats.light_annotations[static_cast<std::size_t>(*ss.light_vision)] +=
          ss.annotations;
    } else {
      stats.unlabelled_light_annotations += ss.annotations;
    }
    stats.sequences.push_back(ss);
  }
  stats.total_images = gt.images.size();
  stats.total_annotations = gt.annotations.size();
  stats.total_sequences = stats.sequences.size();
  return stats;
}

std::string StatsToJson(const DatasetStats& stats) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json totals;
  totals["sequences"] = stats.total_sequences;
  totals["images"] = stats.total_images;
  totals["annotations"] = stats.total_annotations;
  totals["interpolated_annotations"] = stats.interpolated_annotations;
  root["totals"] = std::move(totals);

  nlohmann::ordered_json seqs = nlohmann::ordered_json::array();
  for (const auto& s : stats.sequences) {
    nlohmann::ordered_json j;
    j["sequence_id"] = s.sequence_id;
    j["scene"] = s.scene;
    if (s.light_vision) {
      j["light_vision"] = LightVisionName(*s.light_vision);
    } else {
      j["light_vision"] = nullptr;
    }
    j["frames"] = s.frames;
    j["annotations"] = s.annotations;
    j["density"] = s.density;
    j["density_level"] = DensityLevelName(s.density_level);
    seqs.push_back(std::move(j));
  }
  root["sequences"] = std::move(seqs);

  nlohmann::ordered_json levels;
  for (auto lvl : kAllDensityLevels) {
    levels[std::string(DensityLevelName(lvl))] =
        stats.density_level_sequences[static_cast<std::size_t>(lvl)];
  }
  root["density_levels"] = std::move(levels);

  nlohmann::ordered_json scale;
  for (auto lvl : kAllScaleLevels) {
    scale[std::string(ScaleLevelName(lvl))] =
        stats.scale_totals[static_cast<std::size_t>(lvl)];
  }
  root["scale_totals"] = std::move(scale);

  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  for (const auto& [cls, hist] : stats.class_scale_histogram) {
    nlohmann::ordered_json h;
    for (auto lvl : kAllScaleLevels) {
      h[std::string(ScaleLevelName(lvl))] =
          hist[static_cast<std::size_t>(lvl)];
    }
    per_class[std::to_string(cls)] = std::move(h);
  }
  root["class_scale_histogram"] = std::move(per_class);

  nlohmann::ordered_json light;
  for (auto lv : kAllLightVisions) {
    light[std::string(LightVisionName(lv))] =
        stats.light_annotations[static_cast<std::size_t>(lv)];
  }
  light["unlabelled"] = stats.unlabelled_light_annotations;
  root["light_vision_annotations"] = std::move(light);
  return root.dump(2) + "\n";
}

std::string StatsToCsv(const DatasetStats& stats) {
  std::string out = "section,key,subkey,value\n";
  auto row = [&out](std::string_view section, std::string_view key,
                    std::string_view subkey, auto value) {
    out += fmt::format("{},{},{},{}\n", section, key, subkey, value);
  };
  row("totals", "sequences", "", stats.total_sequences);
  row("totals", "images", "", stats.total_images);
  row("totals", "annotations", "", stats.total_annotations);
  row("totals", "interpolated_annotations", "", stats.interpolated_annotations);
  for (const auto& s : stats.sequences) {
    row("sequence", s.sequence_id, "frames", s.frames);
    row("sequence", s.sequence_id, "annotations", s.annotations);
    row("sequence", s.sequence_id, "density", s.density);
    row("sequence", s.sequence_id, "density_level",
        DensityLevelName(s.density_level));
  }
  for (auto lvl : kAllDensityLevels) {
    row("density_levels", DensityLevelName(lvl), "",
        stats.density_level_sequences[static_cast<std::size_t>(lvl)]);
  }
  for (const auto& [cls, hist] : stats.class_scale_histogram) {
    for (auto lvl : kAllScaleLevels) {
      row("class_scale", std::to_string(cls), ScaleLevelName(lvl),
          hist[static_cast<std::size_t>(lvl)]);
    }
  }
  for (auto lv : kAllLightVisions) {
    row("light_vision", LightVisionName(lv), "",
        stats.light_annotations[static_cast<std::size_t>(lv)]);
  }
  row("light_vision", "unlabelled", "", stats.unlabelled_light_annotations);
  return out;
}

}  // namespace safit

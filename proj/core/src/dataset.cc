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

#include "safit/dataset.h"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace safit {

void GroundTruth::Reindex() {
  image_index_.clear();
  sequence_index_.clear();
  for (std::size_t i = 0; i < images.size(); ++i) {
    image_index_.emplace(images[i].id, i);
  }
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    sequence_index_.emplace(sequences[i].id, i);
  }
}

const ImageInfo* GroundTruth::FindImage(std::int64_t id) const {
  auto it = image_index_.find(id);
  return it == image_index_.end() ? nullptr : &images[it->second];
}

const SequenceMeta* GroundTruth::FindSequence(const std::string& id) const {
  auto it = sequence_index_.find(id);
  return it == sequence_index_.end() ? nullptr : &sequences[it->second];
}

std::vector<std::int64_t> GroundTruth::ClassIds() const {
  std::vector<std::int64_t> ids;
  ids.reserve(categories.size());
  for (const auto& c : categories) ids.push_back(c.id);
  for (const auto& a : annotations) ids.push_back(a.class_id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::string ValidationError::ToJsonLine() const {
  nlohmann::ordered_json j;
  j["error"] = "validation";
  j["code"] = code;
  j["section"] = section;
  j["index"] = index;
  if (record_id) {
    j["id"] = *record_id;
  } else {
    j["id"] = nullptr;
  }
  j["message"] = message;
  return j.dump();
}

}  // namespace safit

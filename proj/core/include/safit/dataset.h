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

#ifndef SAFIT_DATASET_H_
#define SAFIT_DATASET_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "safit/bbox.h"
#include "safit/taxonomy.h"

namespace safit {

inline constexpr int kSchemaVersion = 1;

struct ImageInfo {
  std::int64_t id = 0;
  std::string file_name;
  std::string sequence_id;
  std::int64_t frame_id = 0;
  Modality modality = Modality::kVisible;
  // 0 means unknown; bound checks are skipped.
  int width = 0;
  int height = 0;
};

struct Category {
  std::int64_t id = 0;
  std::string name;
};

struct SequenceMeta {
  std::string id;
  std::string scene;
  std::optional<LightVision> light_vision;
  double fps = 0.0;
  int width = 0;
  int height = 0;
};

// Ground-truth box. frame_id, sequence_id and modality are copied from the
// owning image when loading so downstream code does not need the image table.
struct Annotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  std::string sequence_id;
  std::int64_t frame_id = 0;
  std::optional<std::int64_t> track_id;
  std::int64_t class_id = 0;
  BBox bbox{0.5, 0.5, 1.0, 1.0};
  Modality modality = Modality::kVisible;
  bool ignore = false;
  bool interpolated = false;
  // Set when the loader pulled the box back inside the image by at most the
  // clip tolerance.
  bool clipped = false;
  // "slight" | "moderate" | "heavy"; informational only.
  std::optional<std::string> occlusion;
};

struct Detection {
  std::int64_t image_id = 0;
  std::int64_t frame_id = 0;
  std::int64_t class_id = 0;
  BBox bbox{0.5, 0.5, 1.0, 1.0};
  double score = 0.0;
  Modality modality = Modality::kVisible;
};

class GroundTruth {
 public:
  int schema_version = kSchemaVersion;
  std::vector<ImageInfo> images;
  std::vector<Annotation> annotations;
  std::vector<Category> categories;
  std::vector<SequenceMeta> sequences;

  // Rebuilds the id lookups; call after mutating `images` or `sequences`.
  void Reindex();
  const ImageInfo* FindImage(std::int64_t id) const;
  const SequenceMeta* FindSequence(const std::string& id) const;
  std::vector<std::int64_t> ClassIds() const;

 private:
  std::unordered_map<std::int64_t, std::size_t> image_index_;
  std::unordered_map<std::string, std::size_t> sequence_index_;
};

struct Predictions {
  std::vector<Detection> detections;
};

// One machine-readable record-level problem found while loading.
struct ValidationError {
  std::string code;     // e.g. "missing_field", "score_out_of_range"
  std::string section;  // "images", "annotations", "detections", ...
  std::size_t index = 0;
  std::optional<std::int64_t> record_id;
  std::string message;

  std::string ToJsonLine() const;
};

// The input file is missing or is not valid JSON.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by code paths that need a clean dataset (non-monotone tracks etc.).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
struct LoadResult {
  T data;
  std::vector<ValidationError> errors;
  bool ok() const { return errors.empty(); }
};

// Boxes may overshoot the image by this much before being flagged.
inline constexpr double kClipTolerancePx = 0.5;

}  // namespace safit

#endif  // SAFIT_DATASET_H_

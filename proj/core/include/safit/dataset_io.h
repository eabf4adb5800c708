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

#ifndef SAFIT_DATASET_IO_H_
#define SAFIT_DATASET_IO_H_

#include <string>
#include <string_view>

#include "safit/dataset.h"

namespace safit {

// Ground truth JSON: COCO detection layout (images / annotations /
// categories, boxes as top-left [x, y, w, h]) extended with `schema_version`,
// per-image `sequence_id`, `frame_id`, `modality`, per-annotation
// `track_id`, `ignore`, `interpolated`, `occlusion`, and a `sequences` table.
// Files without `schema_version` are read as plain COCO and the extensions
// take their defaults. See docs/format.md.
LoadResult<GroundTruth> ParseGroundTruth(std::string_view json_text);
LoadResult<GroundTruth> LoadGroundTruth(const std::string& path);

// Predictions: either a COCO result list or
// {"schema_version": 1, "detections": [...]}. When `gt` is given, image ids
// are resolved against it and unknown ids are reported.
LoadResult<Predictions> ParsePredictions(std::string_view json_text,
                                         const GroundTruth* gt = nullptr);
LoadResult<Predictions> LoadPredictions(const std::string& path,
                                        const GroundTruth* gt = nullptr);

std::string SerializeGroundTruth(const GroundTruth& gt);
std::string SerializePredictions(const Predictions& preds);

// Views of a paired-modality dataset restricted to one modality. Images,
// annotations and sequences referenced by the kept images survive.
GroundTruth FilterByModality(const GroundTruth& gt, Modality m);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view content);

}  // namespace safit

#endif  // SAFIT_DATASET_IO_H_

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

#ifndef SAFIT_TRACK_H_
#define SAFIT_TRACK_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "safit/dataset.h"

namespace safit {

// Largest number of consecutive missing frames that gets filled.
inline constexpr std::int64_t kMaxInterpolatedGap = 5;

struct TrackGap {
  std::optional<std::int64_t> track_id;
  std::int64_t after_frame = 0;   // last annotated frame before the gap
  std::int64_t before_frame = 0;  // first annotated frame after the gap
  std::int64_t missing() const { return before_frame - after_frame - 1; }
};

struct InterpolatedTrack {
  // Input annotations plus the filled ones, ordered by frame. Filled entries
  // have `interpolated` set and id/image_id left at 0 for the caller to
  // assign.
  std::vector<Annotation> annotations;
  std::vector<TrackGap> open_gaps;
  std::size_t filled = 0;
};

// Fills gaps of at most `max_gap` missing frames by linear interpolation of
// (cx, cy, w, h). All inputs must share track, class and modality and have
// strictly increasing frame ids; otherwise throws DataError.
InterpolatedTrack InterpolateTrack(std::span<const Annotation> track,
                                   std::int64_t max_gap = kMaxInterpolatedGap);

struct InterpolationSummary {
  std::size_t filled = 0;
  std::vector<TrackGap> open_gaps;
  std::vector<std::string> created_images;
};

// Runs InterpolateTrack over every (sequence, track, modality) group in the
// dataset. Filled boxes attach to the image of the same sequence, frame and
// modality, which is created (with fresh id) when missing.
InterpolationSummary InterpolateDataset(GroundTruth& gt,
                                        std::int64_t max_gap = kMaxInterpolatedGap);

}  // namespace safit

#endif  // SAFIT_TRACK_H_

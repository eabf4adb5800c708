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

#include "safit/track.h"

#include <algorithm>
#include <map>
#include <tuple>

#include <fmt/format.h>

namespace safit {

InterpolatedTrack InterpolateTrack(std::span<const Annotation> track,
                                   std::int64_t max_gap) {
  InterpolatedTrack out;
  if (track.empty()) return out;
  const Annotation& first = track.front();
  for (std::size_t i = 0; i < track.size(); ++i) {
    const Annotation& a = track[i];
    if (a.track_id != first.track_id || a.class_id != first.class_id ||
        a.modality != first.modality || a.sequence_id != first.sequence_id) {
      throw DataError(fmt::format(
          "track entries must share track, class, modality and sequence "
          "(entry {} differs)",
          i));
    }
    if (i > 0 && a.frame_id <= track[i - 1].frame_id) {
      throw DataError(fmt::format(
          "track {} frames are not strictly increasing ({} after {})",
          first.track_id ? std::to_string(*first.track_id) : "<none>",
          a.frame_id, track[i - 1].frame_id));
    }
  }

  out.annotations.reserve(track.size());
  out.annotations.push_back(track.front());
  for (std::size_t i = 1; i < track.size(); ++i) {
    const Annotation& prev = track[i - 1];
    const Annotation& next = track[i];
    const std::int64_t span = next.frame_id - prev.frame_id;
    const std::int64_t missing = span - 1;
    if (missing > max_gap) {
      out.open_gaps.push_back({first.track_id, prev.frame_id, next.frame_id});
    } else {
      for (std::int64_t f = prev.frame_id + 1; f < next.frame_id; ++f) {
        const double t = static_cast<double>(f - prev.frame_id) /
                         static_cast<double>(span);
        auto lerp = [t](double a, double b) { return a + t * (b - a); };
        Annotation filled = prev;
        filled.id = 0;
        filled.image_id = 0;
        filled.frame_id = f;
        filled.bbox = BBox(lerp(prev.bbox.cx(), next.bbox.cx()),
                           lerp(prev.bbox.cy(), next.bbox.cy()),
                           lerp(prev.bbox.w(), next.bbox.w()),
                           lerp(prev.bbox.h(), next.bbox.h()));
        filled.interpolated = true;
        filled.clipped = false;
        filled.ignore = prev.ignore && next.ignore;
        out.annotations.push_back(std::move(filled));
        ++out.filled;
      }
    }
    out.annotations.push_back(next);
  }
  return out;
}

InterpolationSummary InterpolateDataset(GroundTruth& gt,
                                        std::int64_t max_gap) {
  using Key = std::tuple<std::string, std::int64_t, int>;
  std::map<Key, std::vector<Annotation>> groups;
  for (const auto& a : gt.annotations) {
    if (!a.track_id) continue;
    groups[{a.sequence_id, *a.track_id, static_cast<int>(a.modality)}]
        .push_back(a);
  }

  std::map<std::tuple<std::string, std::int64_t, int>, std::int64_t>
      image_of_frame;
  std::int64_t next_image_id = 1;
  for (const auto& img : gt.images) {
    image_of_frame[{img.sequence_id, img.frame_id,
                    static_cast<int>(img.modality)}] = img.id;
    next_image_id = std::max(next_image_id, img.id + 1);
  }
  std::int64_t next_ann_id = 1;
  for (const auto& a : gt.annotations) {
    next_ann_id = std::max(next_ann_id, a.id + 1);
  }

  InterpolationSummary summary;
  for (auto& [key, anns] : groups) {
    std::stable_sort(anns.begin(), anns.end(),
                     [](const Annotation& a, const Annotation& b) {
                       return a.frame_id < b.frame_id;
                     });
    InterpolatedTrack filled = InterpolateTrack(anns, max_gap);
    summary.filled += filled.filled;
    summary.open_gaps.insert(summary.open_gaps.end(), filled.open_gaps.begin(),
                             filled.open_gaps.end());
    for (auto& a : filled.annotations) {
      if (!a.interpolated || a.id != 0) continue;
      const auto frame_key =
          std::make_tuple(a.sequence_id, a.frame_id, static_cast<int>(a.modality));
      auto it = image_of_frame.find(frame_key);
      if (it == image_of_frame.end()) {
        const ImageInfo* ref = gt.FindImage(anns.front().image_id);
        ImageInfo img;
        img.id = next_image_id++;
        img.sequence_id = a.sequence_id;
        img.frame_id = a.frame_id;
        img.modality = a.modality;
        if (ref != nullptr) {
          img.width = ref->width;
          img.height = ref->height;
        }
        gt.images.push_back(img);
        summary.created_images.push_back(
            fmt::format("{}:{}:{}", img.sequence_id, img.frame_id,
                        ModalityName(img.modality)));
        it = image_of_frame.emplace(frame_key, img.id).first;
      }
      a.image_id = it->second;
      a.id = next_ann_id++;
      gt.annotations.push_back(a);
    }
  }
  gt.Reindex();
  return summary;
}

}  // namespace safit

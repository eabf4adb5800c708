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

#include "support/fixtures.h"

#include <algorithm>
#include <cmath>

namespace safit::testing {

FixtureBuilder& FixtureBuilder::Sequence(const std::string& id,
                                         std::optional<LightVision> light,
                                         const std::string& scene) {
  SequenceMeta meta;
  meta.id = id;
  meta.light_vision = light;
  meta.scene = scene;
  meta.fps = 25.0;
  meta.width = 640;
  meta.height = 512;
  gt_.sequences.push_back(meta);
  return *this;
}

FixtureBuilder& FixtureBuilder::Image(std::int64_t id,
                                      const std::string& sequence,
                                      std::int64_t frame, Modality modality,
                                      int width, int height) {
  const bool known = std::any_of(
      gt_.sequences.begin(), gt_.sequences.end(),
      [&](const SequenceMeta& s) { return s.id == sequence; });
  if (!known) Sequence(sequence);
  ImageInfo img;
  img.id = id;
  img.sequence_id = sequence;
  img.frame_id = frame < 0 ? id : frame;
  img.modality = modality;
  img.width = width;
  img.height = height;
  img.file_name = std::to_string(id) + ".jpg";
  gt_.images.push_back(img);
  gt_.Reindex();
  return *this;
}

FixtureBuilder& FixtureBuilder::Category(std::int64_t id,
                                         const std::string& name) {
  gt_.categories.push_back({id, name.empty() ? std::to_string(id) : name});
  return *this;
}

FixtureBuilder& FixtureBuilder::Gt(std::int64_t image_id,
                                   std::int64_t class_id, const BBox& box,
                                   std::optional<std::int64_t> track,
                                   bool ignore, bool interpolated) {
  const ImageInfo* img = gt_.FindImage(image_id);
  Annotation a;
  a.id = next_ann_id_++;
  a.image_id = image_id;
  a.class_id = class_id;
  a.bbox = box;
  a.track_id = track;
  a.ignore = ignore;
  a.interpolated = interpolated;
  if (img != nullptr) {
    a.sequence_id = img->sequence_id;
    a.frame_id = img->frame_id;
    a.modality = img->modality;
  }
  gt_.annotations.push_back(a);
  return *this;
}

FixtureBuilder& FixtureBuilder::Det(std::int64_t image_id,
                                    std::int64_t class_id, const BBox& box,
                                    double score) {
  const ImageInfo* img = gt_.FindImage(image_id);
  Detection d;
  d.image_id = image_id;
  d.class_id = class_id;
  d.bbox = box;
  d.score = score;
  if (img != nullptr) {
    d.frame_id = img->frame_id;
    d.modality = img->modality;
  }
  preds_.detections.push_back(d);
  return *this;
}

GroundTruth FixtureBuilder::gt() const {
  GroundTruth out = gt_;
  if (out.categories.empty()) {
    for (std::int64_t id : out.ClassIds()) {
      out.categories.push_back({id, std::to_string(id)});
    }
  }
  out.Reindex();
  return out;
}

std::pair<GroundTruth, Predictions> PerfectDetectorFixture() {
  FixtureBuilder b;
  b.Sequence("day", LightVision::kHigh).Sequence("night", LightVision::kLow);
  b.Category(1, "car").Category(2, "pedestrian");
  b.Image(1, "day").Image(2, "day").Image(3, "night");
  const BBox boxes[] = {BBox(20, 20, 6, 6),    BBox(100, 80, 12, 10),
                        BBox(200, 150, 24, 20), BBox(300, 200, 50, 40),
                        BBox(400, 300, 120, 110)};
  std::int64_t track = 1;
  for (std::int64_t img = 1; img <= 3; ++img) {
    for (std::size_t i = 0; i < std::size(boxes); ++i) {
      const std::int64_t cls = (i % 2 == 0) ? 1 : 2;
      const BBox box = boxes[i].Translated(static_cast<double>(img), 0.0);
      b.Gt(img, cls, box, track++);
      b.Det(img, cls, box, 1.0);
    }
  }
  return {b.gt(), b.preds()};
}

std::pair<GroundTruth, Predictions> MicroFixture() {
  FixtureBuilder b;
  b.Category(1, "car");
  b.Image(1).Image(2).Image(3);
  b.Gt(1, 1, BBox(20, 20, 10, 10));
  b.Gt(1, 1, BBox(60, 60, 10, 10));
  b.Gt(2, 1, BBox(30, 30, 16, 16));
  b.Gt(3, 1, BBox(100, 100, 40, 40));
  b.Gt(3, 1, BBox(200, 200, 8, 8));  // missed
  b.Det(1, 1, BBox(21, 20, 10, 10), 0.9);
  b.Det(1, 1, BBox(60, 61, 10, 10), 0.6);
  b.Det(2, 1, BBox(31, 31, 16, 16), 0.8);
  b.Det(2, 1, BBox(300, 300, 16, 16), 0.7);  // false positive
  b.Det(3, 1, BBox(102, 100, 40, 40), 0.5);
  return {b.gt(), b.preds()};
}

std::pair<GroundTruth, Predictions> RandomMicroFixture(std::mt19937_64& rng,
                                                       int images) {
  std::uniform_int_distribution<int> num_gt(0, 4);
  std::uniform_int_distribution<int> num_det(0, 6);
  std::uniform_int_distribution<int> cls_dist(1, 2);
  std::uniform_real_distribution<double> pos(20.0, 200.0);
  std::uniform_real_distribution<double> log_size(std::log(2.0),
                                                  std::log(120.0));
  std::uniform_real_distribution<double> jitter(-0.35, 0.35);
  std::uniform_real_distribution<double> scale(0.7, 1.4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  FixtureBuilder b;
  b.Sequence("a", LightVision::kHigh).Sequence("b", LightVision::kInvisible);
  b.Category(1).Category(2);
  for (int img = 1; img <= images; ++img) {
    b.Image(img, img % 2 == 0 ? "b" : "a", -1, Modality::kVisible, 400, 400);
    const int ng = num_gt(rng);
    std::vector<std::pair<std::int64_t, BBox>> gts;
    for (int g = 0; g < ng; ++g) {
      const double w = std::exp(log_size(rng));
      const double h = w * scale(rng);
      const BBox raw(pos(rng), pos(rng), w, h);
      // Keep GT inside the 400x400 frame so the fixture survives a
      // serialize/load cycle.
      const BBox box = BBox::FromCorners(
          std::max(raw.x1(), 0.0), std::max(raw.y1(), 0.0),
          std::min(raw.x2(), 400.0), std::min(raw.y2(), 400.0));
      const std::int64_t cls = cls_dist(rng);
      const bool ignore = unit(rng) < 0.1;
      b.Gt(img, cls, box, std::nullopt, ignore);
      gts.emplace_back(cls, box);
    }
    const int nd = num_det(rng);
    for (int d = 0; d < nd; ++d) {
      BBox box(pos(rng), pos(rng), std::exp(log_size(rng)),
               std::exp(log_size(rng)));
      std::int64_t cls = cls_dist(rng);
      if (!gts.empty() && unit(rng) < 0.7) {
        const auto& [gcls, g] =
            gts[static_cast<std::size_t>(rng() % gts.size())];
        cls = gcls;
        box = BBox(g.cx() + jitter(rng) * g.w(), g.cy() + jitter(rng) * g.h(),
                   g.w() * scale(rng), g.h() * scale(rng));
      }
      b.Det(img, cls, box, unit(rng));
    }
  }
  return {b.gt(), b.preds()};
}

}  // namespace safit::testing

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

#ifndef SAFIT_MASKS_H_
#define SAFIT_MASKS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "safit/bbox.h"
#include "safit/dataset.h"

namespace safit {

enum class MaskMode { kHard, kSoft };

// Dense row-major probability grid for one class of one frame.
class Mask {
 public:
  Mask(int width, int height, std::int64_t class_id = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::int64_t class_id() const { return class_id_; }

  float at(int x, int y) const { return values_[Index(x, y)]; }
  float& at(int x, int y) { return values_[Index(x, y)]; }
  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::int64_t class_id_;
  std::vector<float> values_;
};

struct SoftMaskOptions {
  // sigma = ratio * extent; 0.25 places the 2-sigma contour on the box edge.
  double sigma_ratio = 0.25;
};

// Hard: pixel is 1 when its center lies in [x1,x2) x [y1,y2) of any box.
// Soft: inside the same support, the value is the unnormalised Gaussian
// exp(-(dx^2/(2 sx^2) + dy^2/(2 sy^2))) around the box center, evaluated at
// the pixel center; overlapping boxes combine by per-pixel max.
// Throws std::invalid_argument for a non-positive image size.
Mask Rasterize(std::span<const BBox> boxes, MaskMode mode, int width,
               int height, std::int64_t class_id = 0,
               const SoftMaskOptions& options = {});

// Rasterizes every annotation of `class_id` on image `image_id`.
Mask RasterizeImage(const GroundTruth& gt, std::int64_t image_id,
                    std::int64_t class_id, MaskMode mode,
                    const SoftMaskOptions& options = {});

enum class Connectivity { kFour = 4, kEight = 8 };

// Binarizes at value >= threshold, labels connected regions in raster order
// and returns the tight pixel-aligned box of each region. Detection score is
// the mean pre-threshold value over the region; class_id comes from the mask,
// image/frame ids are left at 0.
std::vector<Detection> MaskToBBoxes(const Mask& mask, double threshold = 0.5,
                                    Connectivity connectivity =
                                        Connectivity::kEight);

}  // namespace safit

#endif  // SAFIT_MASKS_H_

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

#include "safit/masks.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace safit {

Mask::Mask(int width, int height, std::int64_t class_id)
    : width_(width), height_(height), class_id_(class_id) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument(
        fmt::format("mask size must be positive, got {}x{}", width, height));
  }
  values_.assign(static_cast<std::size_t>(width) *
                     static_cast<std::size_t>(height),
                 0.0f);
}

Mask Rasterize(std::span<const BBox> boxes, MaskMode mode, int width,
               int height, std::int64_t class_id,
               const SoftMaskOptions& options) {
  if (mode == MaskMode::kSoft && !(options.sigma_ratio > 0.0)) {
    throw std::invalid_argument("soft mask sigma ratio must be positive");
  }
  Mask mask(width, height, class_id);
  for (const BBox& b : boxes) {
    // Pixel i has center i + 0.5; it is inside when x1 <= i + 0.5 < x2.
    const int x_lo = std::max(0, static_cast<int>(std::ceil(b.x1() - 0.5)));
    const int x_hi =
        std::min(width - 1, static_cast<int>(std::ceil(b.x2() - 0.5)) - 1);
    const int y_lo = std::max(0, static_cast<int>(std::ceil(b.y1() - 0.5)));
    const int y_hi =
        std::min(height - 1, static_cast<int>(std::ceil(b.y2() - 0.5)) - 1);
    const double sx = options.sigma_ratio * b.w();
    const double sy = options.sigma_ratio * b.h();
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        float value = 1.0f;
        if (mode == MaskMode::kSoft) {
          const double dx = x + 0.5 - b.cx();
          const double dy = y + 0.5 - b.cy();
          value = static_cast<float>(std::exp(
              -(dx * dx / (2.0 * sx * sx) + dy * dy / (2.0 * sy * sy))));
        }
        float& px = mask.at(x, y);
        px = std::max(px, value);
      }
    }
  }
  return mask;
}

Mask RasterizeImage(const GroundTruth& gt, std::int64_t image_id,
                    std::int64_t class_id, MaskMode mode,
                    const SoftMaskOptions& options) {
  const ImageInfo* img = gt.FindImage(image_id);
  if (img == nullptr) {
    throw std::invalid_argument(fmt::format("unknown image id {}", image_id));
  }
  std::vector<BBox> boxes;
  for (const auto& a : gt.annotations) {
    if (a.image_id == image_id && a.class_id == class_id) {
      boxes.push_back(a.bbox);
    }
  }
  return Rasterize(boxes, mode, img->width, img->height, class_id, options);
}

std::vector<Detection> MaskToBBoxes(const Mask& mask, double threshold,
                                    Connectivity connectivity) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("mask threshold must lie in (0, 1)");
  }
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  auto on = [&](int x, int y) { return mask.at(x, y) >= threshold; };
  auto idx = [w](int x, int y) {
    return static_cast<std::size_t>(y) * w + x;
  };

  std::vector<Detection> out;
  std::vector<std::pair<int, int>> stack;
  int next_label = 0;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!on(x0, y0) || label[idx(x0, y0)] >= 0) continue;
      int min_x = x0, max_x = x0, min_y = y0, max_y = y0;
      double sum = 0.0;
      std::size_t count = 0;
      label[idx(x0, y0)] = next_label;
      stack.assign(1, {x0, y0});
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        sum += mask.at(x, y);
        ++count;
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (connectivity == Connectivity::kFour && dx != 0 && dy != 0) {
              continue;
            }
            const int nx = x + dx;
            const int ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (!on(nx, ny) || label[idx(nx, ny)] >= 0) continue;
            label[idx(nx, ny)] = next_label;
            stack.emplace_back(nx, ny);
          }
        }
      }
      ++next_label;
      Detection d;
      d.class_id = mask.class_id();
      d.bbox = BBox::FromCorners(min_x, min_y, max_x + 1, max_y + 1);
      d.score = sum / static_cast<double>(count);
      out.push_back(d);
    }
  }
  return out;
}

}  // namespace safit

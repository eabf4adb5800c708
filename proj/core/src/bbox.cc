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

#include "safit/bbox.h"

#include <cmath>

#include <fmt/format.h>

namespace safit {

BBox::BBox(double cx, double cy, double w, double h)
    : cx_(cx), cy_(cy), w_(w), h_(h) {
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(w) ||
      !std::isfinite(h)) {
    throw InvalidBoxError("box has non-finite parameters");
  }
  if (!(w > 0.0) || !(h > 0.0)) {
    throw InvalidBoxError(
        fmt::format("box extent must be positive, got w={} h={}", w, h));
  }
}

BBox BBox::FromCorners(double x1, double y1, double x2, double y2) {
  return BBox(0.5 * (x1 + x2), 0.5 * (y1 + y2), x2 - x1, y2 - y1);
}

BBox BBox::FromTopLeft(double x, double y, double w, double h) {
  return BBox(x + 0.5 * w, y + 0.5 * h, w, h);
}

BBox BBox::Translated(double dx, double dy) const {
  return BBox(cx_ + dx, cy_ + dy, w_, h_);
}

BBox BBox::Scaled(double k) const {
  return BBox(cx_ * k, cy_ * k, w_ * k, h_ * k);
}

std::string BBox::ToString() const {
  return fmt::format("(cx={}, cy={}, w={}, h={})", cx_, cy_, w_, h_);
}

}  // namespace safit

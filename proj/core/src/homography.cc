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

#include "safit/homography.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace safit {
namespace {

double FrobeniusNorm(const Homography::Matrix& m) {
  double s = 0.0;
  for (const auto& row : m) {
    for (double v : row) s += v * v;
  }
  return std::sqrt(s);
}

double Det(const Homography::Matrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Projective w below this fraction of ||H|| counts as "at infinity".
constexpr double kInfinityTolerance = 1e-12;

}  // namespace

Homography::Homography(const Matrix& m) : m_(m) {
  for (const auto& row : m) {
    for (double v : row) {
      if (!std::isfinite(v)) throw WarpError("homography has non-finite entry");
    }
  }
  const double norm = FrobeniusNorm(m);
  if (!(std::abs(Det(m)) > 1e-12 * norm * norm * norm)) {
    throw WarpError("homography is singular");
  }
}

Homography Homography::Identity() {
  return Homography({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
}

Homography Homography::Translation(double dx, double dy) {
  return Homography({{{1, 0, dx}, {0, 1, dy}, {0, 0, 1}}});
}

Homography Homography::Scale(double sx, double sy) {
  return Homography({{{sx, 0, 0}, {0, sy, 0}, {0, 0, 1}}});
}

double Homography::Determinant() const { return Det(m_); }

Homography Homography::Inverse() const {
  const auto& a = m_;
  const double inv_det = 1.0 / Det(a);
  Matrix r;
  r[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) * inv_det;
  r[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) * inv_det;
  r[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) * inv_det;
  r[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) * inv_det;
  r[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) * inv_det;
  r[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) * inv_det;
  r[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) * inv_det;
  r[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) * inv_det;
  r[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) * inv_det;
  return Homography(r);
}

Homography Homography::operator*(const Homography& rhs) const {
  Matrix r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) r[i][j] += m_[i][k] * rhs.m_[k][j];
    }
  }
  return Homography(r);
}

std::array<double, 2> Homography::Apply(double x, double y) const {
  const double u = m_[0][0] * x + m_[0][1] * y + m_[0][2];
  const double v = m_[1][0] * x + m_[1][1] * y + m_[1][2];
  const double w = m_[2][0] * x + m_[2][1] * y + m_[2][2];
  const double scale = std::abs(m_[2][0] * x) + std::abs(m_[2][1] * y) +
                       std::abs(m_[2][2]);
  if (!(std::abs(w) > kInfinityTolerance * scale)) {
    throw WarpError(
        fmt::format("point ({}, {}) maps to the line at infinity", x, y));
  }
  return {u / w, v / w};
}

std::optional<BBox> WarpBBox(const Homography& h, const BBox& box,
                             const ImageSize& clip_to) {
  const auto& m = h.matrix();
  const std::array<std::array<double, 2>, 4> corners = {{{box.x1(), box.y1()},
                                                          {box.x2(), box.y1()},
                                                          {box.x1(), box.y2()},
                                                          {box.x2(), box.y2()}}};
  // A box whose corners have w of mixed sign wraps through infinity and has
  // no finite image.
  int positive = 0;
  for (const auto& c : corners) {
    if (m[2][0] * c[0] + m[2][1] * c[1] + m[2][2] > 0.0) ++positive;
  }
  if (positive != 0 && positive != 4) {
    throw WarpError("box straddles the line at infinity");
  }

  double x1 = std::numeric_limits<double>::infinity();
  double y1 = x1;
  double x2 = -x1;
  double y2 = -x1;
  for (const auto& c : corners) {
    const auto p = h.Apply(c[0], c[1]);
    x1 = std::min(x1, p[0]);
    y1 = std::min(y1, p[1]);
    x2 = std::max(x2, p[0]);
    y2 = std::max(y2, p[1]);
  }
  x1 = std::clamp(x1, 0.0, clip_to.width);
  x2 = std::clamp(x2, 0.0, clip_to.width);
  y1 = std::clamp(y1, 0.0, clip_to.height);
  y2 = std::clamp(y2, 0.0, clip_to.height);
  if (!(x2 > x1) || !(y2 > y1)) return std::nullopt;
  return BBox::FromCorners(x1, y1, x2, y2);
}

}  // namespace safit

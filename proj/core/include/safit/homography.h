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

#ifndef SAFIT_HOMOGRAPHY_H_
#define SAFIT_HOMOGRAPHY_H_

#include <array>
#include <optional>
#include <stdexcept>

#include "safit/bbox.h"

namespace safit {

class WarpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ImageSize {
  double width = 0.0;
  double height = 0.0;
};

// Row-major 3x3 projective transform. Construction rejects singular matrices
// (|det| <= 1e-12 * ||H||_F^3).
class Homography {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  explicit Homography(const Matrix& m);

  static Homography Identity();
  static Homography Translation(double dx, double dy);
  static Homography Scale(double sx, double sy);

  const Matrix& matrix() const { return m_; }
  double Determinant() const;
  Homography Inverse() const;
  Homography operator*(const Homography& rhs) const;

  // Maps (x, y) through the transform with projective division. Throws
  // WarpError when the point lands on the line at infinity.
  std::array<double, 2> Apply(double x, double y) const;

 private:
  Matrix m_;
};

// Warps the four corners, takes their axis-aligned enclosing box and clips
// it to [0, width] x [0, height]. Returns nullopt when nothing is left.
// Throws WarpError when the box straddles or touches the line at infinity.
std::optional<BBox> WarpBBox(const Homography& h, const BBox& box,
                             const ImageSize& clip_to);

}  // namespace safit

#endif  // SAFIT_HOMOGRAPHY_H_

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

#ifndef SAFIT_BBOX_H_
#define SAFIT_BBOX_H_

#include <stdexcept>
#include <string>

namespace safit {

// Raised when a box is built with a non-positive or non-finite extent.
class InvalidBoxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Corners {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
};

// Axis-aligned box in center-size form. Width and height are strictly
// positive; construction rejects anything else, so every metric can assume a
// non-degenerate box.
class BBox {
 public:
  BBox(double cx, double cy, double w, double h);

  static BBox FromCorners(double x1, double y1, double x2, double y2);
  // Top-left (x, y, w, h) form as used by COCO files.
  static BBox FromTopLeft(double x, double y, double w, double h);

  double cx() const { return cx_; }
  double cy() const { return cy_; }
  double w() const { return w_; }
  double h() const { return h_; }

  double x1() const { return cx_ - 0.5 * w_; }
  double y1() const { return cy_ - 0.5 * h_; }
  double x2() const { return cx_ + 0.5 * w_; }
  double y2() const { return cy_ + 0.5 * h_; }

  double area() const { return w_ * h_; }
  Corners corners() const { return {x1(), y1(), x2(), y2()}; }

  BBox Translated(double dx, double dy) const;
  BBox Scaled(double k) const;

  std::string ToString() const;

  friend bool operator==(const BBox&, const BBox&) = default;

 private:
  double cx_;
  double cy_;
  double w_;
  double h_;
};

}  // namespace safit

#endif  // SAFIT_BBOX_H_

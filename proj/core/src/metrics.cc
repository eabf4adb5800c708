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

#include "safit/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace safit {
namespace {

struct Overlap {
  double inter = 0.0;
  double uni = 0.0;
  double hull_w = 0.0;
  double hull_h = 0.0;
};

// Area from the edges rather than w * h, so that identical boxes give
// inter == uni bit for bit.
double EdgeArea(const BBox& b) { return (b.x2() - b.x1()) * (b.y2() - b.y1()); }

Overlap ComputeOverlap(const BBox& p, const BBox& gt) {
  const double iw =
      std::max(0.0, std::min(p.x2(), gt.x2()) - std::max(p.x1(), gt.x1()));
  const double ih =
      std::max(0.0, std::min(p.y2(), gt.y2()) - std::max(p.y1(), gt.y1()));
  Overlap o;
  o.inter = iw * ih;
  o.uni = EdgeArea(p) + EdgeArea(gt) - o.inter;
  o.hull_w = std::max(p.x2(), gt.x2()) - std::min(p.x1(), gt.x1());
  o.hull_h = std::max(p.y2(), gt.y2()) - std::min(p.y1(), gt.y1());
  return o;
}

double CenterDistSq(const BBox& p, const BBox& gt) {
  const double dx = p.cx() - gt.cx();
  const double dy = p.cy() - gt.cy();
  return dx * dx + dy * dy;
}

}  // namespace

std::string_view MeasureName(Measure m) {
  switch (m) {
    case Measure::kIou:
      return "iou";
    case Measure::kGiou:
      return "giou";
    case Measure::kDiou:
      return "diou";
    case Measure::kCiou:
      return "ciou";
    case Measure::kNwd:
      return "nwd";
    case Measure::kSafit:
      return "safit";
    case Measure::kSafitS:
      return "safit_s";
    case Measure::kSafitG:
      return "safit_g";
  }
  return "unknown";
}

Measure ParseMeasure(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (MeasureName(m) == name) return m;
  }
  throw ConfigError(fmt::format("unknown measure '{}'", name));
}

void MeasureParams::Validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ConfigError(fmt::format("C must be positive, got {}", c));
  }
  if (k && (!(*k > 0.0) || !std::isfinite(*k))) {
    throw ConfigError(fmt::format("K must be positive, got {}", *k));
  }
}

double Iou(const BBox& p, const BBox& gt) {
  const Overlap o = ComputeOverlap(p, gt);
  return o.inter / o.uni;
}

double Giou(const BBox& p, const BBox& gt) {
  const Overlap o = ComputeOverlap(p, gt);
  const double hull = o.hull_w * o.hull_h;
  return o.inter / o.uni - (hull - o.uni) / hull;
}

double Diou(const BBox& p, const BBox& gt) {
  const Overlap o = ComputeOverlap(p, gt);
  const double diag_sq = o.hull_w * o.hull_w + o.hull_h * o.hull_h;
  return o.inter / o.uni - CenterDistSq(p, gt) / diag_sq;
}

double Ciou(const BBox& p, const BBox& gt) {
  const Overlap o = ComputeOverlap(p, gt);
  const double iou = o.inter / o.uni;
  const double diag_sq = o.hull_w * o.hull_w + o.hull_h * o.hull_h;
  const double dtheta = std::atan(gt.w() / gt.h()) - std::atan(p.w() / p.h());
  const double v =
      4.0 / (std::numbers::pi * std::numbers::pi) * dtheta * dtheta;
  const double denom = (1.0 - iou) + v;
  // denom is zero only for identical boxes, where the penalty vanishes.
  const double alpha = denom > 0.0 ? v / denom : 0.0;
  return iou - CenterDistSq(p, gt) / diag_sq - alpha * v;
}

double WassersteinSq(const BBox& p, const BBox& gt) {
  const double dw = 0.5 * (p.w() - gt.w());
  const double dh = 0.5 * (p.h() - gt.h());
  return CenterDistSq(p, gt) + dw * dw + dh * dh;
}

double Nwd(const BBox& p, const BBox& gt, const NwdParams& params) {
  return std::exp(-std::sqrt(WassersteinSq(p, gt)) / params.k);
}

double SafitWeight(const BBox& gt, const SAFitParams& params) {
  const double x = std::sqrt(gt.area()) / params.c - 1.0;
  return 1.0 / (1.0 + std::exp(-x));
}

double Safit(const BBox& p, const BBox& gt, const SAFitParams& params) {
  const double s = SafitWeight(gt, params);
  return s * Iou(p, gt) + (1.0 - s) * Nwd(p, gt, {params.c});
}

double SafitS(const BBox& p, const BBox& gt, const SAFitParams& params) {
  if (std::sqrt(gt.area()) < params.c) return Nwd(p, gt, {params.c});
  return Iou(p, gt);
}

double SafitG(const BBox& p, const BBox& gt, const SAFitParams& params) {
  const double s = SafitWeight(gt, params);
  return s * Giou(p, gt) + (1.0 - s) * Nwd(p, gt, {params.c});
}

double Affinity(Measure m, const BBox& p, const BBox& gt,
                const MeasureParams& params) {
  switch (m) {
    case Measure::kIou:
      return Iou(p, gt);
    case Measure::kGiou:
      return Giou(p, gt);
    case Measure::kDiou:
      return Diou(p, gt);
    case Measure::kCiou:
      return Ciou(p, gt);
    case Measure::kNwd:
      return Nwd(p, gt, params.nwd());
    case Measure::kSafit:
      return Safit(p, gt, params.safit());
    case Measure::kSafitS:
      return SafitS(p, gt, params.safit());
    case Measure::kSafitG:
      return SafitG(p, gt, params.safit());
  }
  throw ConfigError("unknown measure");
}

}  // namespace safit

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

#include "safit/losses.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace safit {
namespace {

// Gradient with respect to (cx, cy, w, h) of the predicted box.
struct Grad {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  Grad operator+(const Grad& o) const {
    return {cx + o.cx, cy + o.cy, w + o.w, h + o.h};
  }
  Grad operator-(const Grad& o) const {
    return {cx - o.cx, cy - o.cy, w - o.w, h - o.h};
  }
  Grad operator*(double k) const { return {cx * k, cy * k, w * k, h * k}; }
};

struct ValueGrad {
  double value = 0.0;
  Grad grad;
  bool kink = false;
};

// One axis of the overlap/hull geometry. Derivatives are with respect to the
// predicted box center and extent along that axis.
struct AxisTerms {
  double inter = 0.0;  // overlap length, clamped at 0
  double d_inter_c = 0.0;
  double d_inter_s = 0.0;
  double hull = 0.0;
  double d_hull_c = 0.0;
  double d_hull_s = 0.0;
  bool kink = false;
};

AxisTerms Axis(double pc, double ps, double gc, double gs) {
  const double p1 = pc - 0.5 * ps;
  const double p2 = pc + 0.5 * ps;
  const double g1 = gc - 0.5 * gs;
  const double g2 = gc + 0.5 * gs;
  AxisTerms t;
  t.kink = (p1 == g1) || (p2 == g2) || (p2 == g1) || (p1 == g2);

  // On ties the predicted edge is taken as the active one (interior-overlap
  // branch).
  const bool p_hi_inner = p2 <= g2;
  const bool p_lo_inner = p1 >= g1;
  const double hi = p_hi_inner ? p2 : g2;
  const double lo = p_lo_inner ? p1 : g1;
  const double raw = hi - lo;
  if (raw > 0.0) {
    t.inter = raw;
    // d(p2)/dc = 1, d(p2)/ds = 1/2; d(p1)/dc = 1, d(p1)/ds = -1/2
    const double dhi_c = p_hi_inner ? 1.0 : 0.0;
    const double dhi_s = p_hi_inner ? 0.5 : 0.0;
    const double dlo_c = p_lo_inner ? 1.0 : 0.0;
    const double dlo_s = p_lo_inner ? -0.5 : 0.0;
    t.d_inter_c = dhi_c - dlo_c;
    t.d_inter_s = dhi_s - dlo_s;
  }

  const bool p_hi_outer = p2 >= g2;
  const bool p_lo_outer = p1 <= g1;
  t.hull = (p_hi_outer ? p2 : g2) - (p_lo_outer ? p1 : g1);
  t.d_hull_c = (p_hi_outer ? 1.0 : 0.0) - (p_lo_outer ? 1.0 : 0.0);
  t.d_hull_s = (p_hi_outer ? 0.5 : 0.0) - (p_lo_outer ? -0.5 : 0.0);
  return t;
}

struct BoxGeometry {
  AxisTerms x;
  AxisTerms y;
  double inter = 0.0;
  Grad d_inter;
  double uni = 0.0;
  Grad d_uni;
  double iou = 0.0;
  Grad d_iou;
  bool kink = false;
};

BoxGeometry Geometry(const BBox& p, const BBox& gt) {
  BoxGeometry g;
  g.x = Axis(p.cx(), p.w(), gt.cx(), gt.w());
  g.y = Axis(p.cy(), p.h(), gt.cy(), gt.h());
  g.kink = g.x.kink || g.y.kink;

  g.inter = g.x.inter * g.y.inter;
  g.d_inter = {g.x.d_inter_c * g.y.inter, g.y.d_inter_c * g.x.inter,
               g.x.d_inter_s * g.y.inter, g.y.d_inter_s * g.x.inter};
  g.uni = (p.x2() - p.x1()) * (p.y2() - p.y1()) +
          (gt.x2() - gt.x1()) * (gt.y2() - gt.y1()) - g.inter;
  const Grad d_area{0.0, 0.0, p.h(), p.w()};
  g.d_uni = d_area - g.d_inter;
  g.iou = g.inter / g.uni;
  g.d_iou = (g.d_inter * g.uni - g.d_uni * g.inter) * (1.0 / (g.uni * g.uni));
  return g;
}

ValueGrad IouVG(const BBox& p, const BBox& gt) {
  const BoxGeometry g = Geometry(p, gt);
  return {g.iou, g.d_iou, g.kink};
}

ValueGrad GiouVG(const BBox& p, const BBox& gt) {
  const BoxGeometry g = Geometry(p, gt);
  const double hull = g.x.hull * g.y.hull;
  const Grad d_hull{g.x.d_hull_c * g.y.hull, g.y.d_hull_c * g.x.hull,
                    g.x.d_hull_s * g.y.hull, g.y.d_hull_s * g.x.hull};
  // giou = iou - 1 + uni / hull
  const double value = g.iou - (hull - g.uni) / hull;
  const Grad grad =
      g.d_iou + (g.d_uni * hull - d_hull * g.uni) * (1.0 / (hull * hull));
  return {value, grad, g.kink};
}

// Center-distance penalty rho^2 / diag^2 shared by DIoU and CIoU.
ValueGrad DistancePenalty(const BBox& p, const BBox& gt,
                          const BoxGeometry& g) {
  const double dx = p.cx() - gt.cx();
  const double dy = p.cy() - gt.cy();
  const double rho = dx * dx + dy * dy;
  const Grad d_rho{2.0 * dx, 2.0 * dy, 0.0, 0.0};
  const double diag = g.x.hull * g.x.hull + g.y.hull * g.y.hull;
  const Grad d_diag{2.0 * g.x.hull * g.x.d_hull_c,
                    2.0 * g.y.hull * g.y.d_hull_c,
                    2.0 * g.x.hull * g.x.d_hull_s,
                    2.0 * g.y.hull * g.y.d_hull_s};
  return {rho / diag, (d_rho * diag - d_diag * rho) * (1.0 / (diag * diag)),
          false};
}

ValueGrad DiouVG(const BBox& p, const BBox& gt) {
  const BoxGeometry g = Geometry(p, gt);
  const ValueGrad pen = DistancePenalty(p, gt, g);
  return {g.iou - pen.value, g.d_iou - pen.grad, g.kink};
}

ValueGrad CiouVG(const BBox& p, const BBox& gt) {
  const BoxGeometry g = Geometry(p, gt);
  const ValueGrad pen = DistancePenalty(p, gt, g);

  constexpr double kAspect = 4.0 / (std::numbers::pi * std::numbers::pi);
  const double dtheta = std::atan(gt.w() / gt.h()) - std::atan(p.w() / p.h());
  const double v = kAspect * dtheta * dtheta;
  const double r2 = p.w() * p.w() + p.h() * p.h();
  // d atan(w/h) / dw = h / (w^2 + h^2), / dh = -w / (w^2 + h^2)
  const Grad d_v{0.0, 0.0, -2.0 * kAspect * dtheta * (p.h() / r2),
                 2.0 * kAspect * dtheta * (p.w() / r2)};

  double value = g.iou - pen.value;
  Grad grad = g.d_iou - pen.grad;
  bool kink = g.kink;
  const double denom = (1.0 - g.iou) + v;
  if (denom > 0.0) {
    // penalty alpha * v = v^2 / denom, differentiated through alpha too.
    const Grad d_denom = d_v - g.d_iou;
    value -= v * v / denom;
    grad = grad -
           (d_v * (2.0 * v * denom) - d_denom * (v * v)) * (1.0 / (denom * denom));
  } else {
    kink = true;
  }
  return {value, grad, kink};
}

ValueGrad NwdVG(const BBox& p, const BBox& gt, double k) {
  const double dx = p.cx() - gt.cx();
  const double dy = p.cy() - gt.cy();
  const double dw = 0.5 * (p.w() - gt.w());
  const double dh = 0.5 * (p.h() - gt.h());
  const double dist = std::sqrt(dx * dx + dy * dy + dw * dw + dh * dh);
  const double value = std::exp(-dist / k);
  if (dist == 0.0) {
    // Cone apex: zero is a valid subgradient of 1 - exp(-dist/K).
    return {value, {}, true};
  }
  // d dist = d(wsq) / (2 dist); d(wsq)/dw = 2 * dw * 1/2.
  const Grad d_dist{dx / dist, dy / dist, 0.5 * dw / dist, 0.5 * dh / dist};
  return {value, d_dist * (-value / k), false};
}

ValueGrad Blend(double s, const ValueGrad& a, const ValueGrad& b) {
  return {s * a.value + (1.0 - s) * b.value, a.grad * s + b.grad * (1.0 - s),
          a.kink || b.kink};
}

ValueGrad MeasureVG(Measure m, const BBox& p, const BBox& gt,
                    const MeasureParams& params) {
  switch (m) {
    case Measure::kIou:
      return IouVG(p, gt);
    case Measure::kGiou:
      return GiouVG(p, gt);
    case Measure::kDiou:
      return DiouVG(p, gt);
    case Measure::kCiou:
      return CiouVG(p, gt);
    case Measure::kNwd:
      return NwdVG(p, gt, params.nwd().k);
    case Measure::kSafit:
      return Blend(SafitWeight(gt, params.safit()), IouVG(p, gt),
                   NwdVG(p, gt, params.c));
    case Measure::kSafitS: {
      const bool boundary = std::sqrt(gt.area()) == params.c;
      ValueGrad vg = std::sqrt(gt.area()) < params.c ? NwdVG(p, gt, params.c)
                                                     : IouVG(p, gt);
      vg.kink = vg.kink || boundary;
      return vg;
    }
    case Measure::kSafitG:
      return Blend(SafitWeight(gt, params.safit()), GiouVG(p, gt),
                   NwdVG(p, gt, params.c));
  }
  throw ConfigError("unknown measure");
}

}  // namespace

LossGrad Loss(Measure m, const BBox& p, const BBox& gt,
              const MeasureParams& params) {
  const ValueGrad vg = MeasureVG(m, p, gt, params);
  LossGrad out;
  out.value = 1.0 - vg.value;
  out.d_cx = -vg.grad.cx;
  out.d_cy = -vg.grad.cy;
  out.d_w = -vg.grad.w;
  out.d_h = -vg.grad.h;
  out.subgradient = vg.kink;
  return out;
}

FdCheckResult FdCheck(Measure m, const BBox& p, const BBox& gt,
                      const MeasureParams& params, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  const LossGrad analytic = Loss(m, p, gt, params);
  if (analytic.subgradient) return {0.0, true};

  const std::array<double, 4> base = {p.cx(), p.cy(), p.w(), p.h()};
  const std::array<double, 4> grad = {analytic.d_cx, analytic.d_cy,
                                      analytic.d_w, analytic.d_h};
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    auto plus = base;
    auto minus = base;
    plus[i] += step;
    minus[i] -= step;
    const double lp =
        1.0 - Affinity(m, BBox(plus[0], plus[1], plus[2], plus[3]), gt, params);
    const double lm = 1.0 - Affinity(m, BBox(minus[0], minus[1], minus[2],
                                             minus[3]),
                                     gt, params);
    const double numeric = (lp - lm) / (2.0 * step);
    worst = std::max(worst, std::abs(grad[i] - numeric) /
                                std::max(1.0, std::abs(grad[i])));
  }
  return {worst, false};
}

}  // namespace safit

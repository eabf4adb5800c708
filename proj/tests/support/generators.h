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

#ifndef SAFIT_TESTS_SUPPORT_GENERATORS_H_
#define SAFIT_TESTS_SUPPORT_GENERATORS_H_

#include <cmath>
#include <random>
#include <utility>

#include "safit/bbox.h"

namespace safit::testing {

// Box with log-uniform size in [min_size, max_size] and center in
// [0, 500)^2.
inline BBox RandomBox(std::mt19937_64& rng, double min_size = 1.0,
                      double max_size = 300.0) {
  std::uniform_real_distribution<double> pos(0.0, 500.0);
  std::uniform_real_distribution<double> ls(std::log(min_size),
                                            std::log(max_size));
  return BBox(pos(rng), pos(rng), std::exp(ls(rng)), std::exp(ls(rng)));
}

// A prediction near `gt`: center jitter up to `spread` box extents and
// size scaled by [0.5, 2].
inline BBox PerturbedBox(std::mt19937_64& rng, const BBox& gt,
                         double spread = 0.6) {
  std::uniform_real_distribution<double> j(-spread, spread);
  std::uniform_real_distribution<double> s(std::log(0.5), std::log(2.0));
  return BBox(gt.cx() + j(rng) * gt.w(), gt.cy() + j(rng) * gt.h(),
              gt.w() * std::exp(s(rng)), gt.h() * std::exp(s(rng)));
}

inline std::pair<BBox, BBox> RandomPair(std::mt19937_64& rng) {
  const BBox gt = RandomBox(rng, 2.0, 200.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.2) return {RandomBox(rng, 2.0, 200.0), gt};
  return {PerturbedBox(rng, gt), gt};
}

}  // namespace safit::testing

#endif  // SAFIT_TESTS_SUPPORT_GENERATORS_H_

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

#include <random>

#include <gtest/gtest.h>

namespace safit {
namespace {

const ImageSize kBig{1e6, 1e6};

TEST(HomographyTest, RejectsSingular) {
  EXPECT_THROW(Homography({{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}}), WarpError);
  EXPECT_THROW(Homography({{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}}), WarpError);
}

TEST(WarpBBoxTest, IdentityIsIdentity) {
  const BBox b(40, 30, 12, 7);
  auto w = WarpBBox(Homography::Identity(), b, {640, 512});
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, b);
}

TEST(WarpBBoxTest, Translation) {
  auto w = WarpBBox(Homography::Translation(10, 5), BBox(40, 30, 12, 8),
                    {640, 512});
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, BBox(50, 35, 12, 8));
}

TEST(WarpBBoxTest, UniformScaleAboutOrigin) {
  auto w = WarpBBox(Homography::Scale(2, 2), BBox(4, 4, 8, 8), {640, 512});
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, BBox(8, 8, 16, 16));
}

TEST(WarpBBoxTest, ClipsAndDropsEmpty) {
  auto clipped = WarpBBox(Homography::Translation(-8, 0), BBox(6, 10, 8, 4),
                          {100, 100});
  ASSERT_TRUE(clipped);
  EXPECT_EQ(*clipped, BBox::FromCorners(0, 8, 2, 12));
  EXPECT_FALSE(WarpBBox(Homography::Translation(-50, 0), BBox(6, 10, 8, 4),
                        {100, 100}));
}

TEST(WarpBBoxTest, LineAtInfinityIsAnError) {
  // w = x - 10: the box [5, 15] x [0, 4] straddles x = 10.
  const Homography h({{{1, 0, 0}, {0, 1, 0}, {1, 0, -10}}});
  EXPECT_THROW(WarpBBox(h, BBox::FromCorners(5, 0, 15, 4), kBig), WarpError);
  EXPECT_THROW(h.Apply(10, 3), WarpError);
  // Entirely on one side is fine.
  EXPECT_TRUE(WarpBBox(h, BBox::FromCorners(11, 0, 15, 4), kBig));
}

TEST(WarpBBoxTest, InverseWarpContainsOriginal) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> small(-1e-4, 1e-4);
  std::uniform_real_distribution<double> lin(-0.3, 0.3);
  std::uniform_real_distribution<double> tr(-20, 20);
  std::uniform_real_distribution<double> pos(100, 300);
  std::uniform_real_distribution<double> size(2, 60);
  for (int i = 0; i < 500; ++i) {
    const Homography h({{{1 + lin(rng), lin(rng), tr(rng)},
                         {lin(rng), 1 + lin(rng), tr(rng)},
                         {small(rng), small(rng), 1.0}}});
    const BBox b(pos(rng), pos(rng), size(rng), size(rng));
    auto fwd = WarpBBox(h, b, kBig);
    ASSERT_TRUE(fwd);
    auto back = WarpBBox(h.Inverse(), *fwd, kBig);
    ASSERT_TRUE(back);
    const double eps = 1e-9 * (1 + b.x2());
    EXPECT_LE(back->x1(), b.x1() + eps);
    EXPECT_LE(back->y1(), b.y1() + eps);
    EXPECT_GE(back->x2(), b.x2() - eps);
    EXPECT_GE(back->y2(), b.y2() - eps);
  }
}

TEST(HomographyTest, InverseComposesToIdentity) {
  const Homography h({{{1.1, 0.2, 5}, {-0.1, 0.9, -3}, {1e-4, 2e-4, 1}}});
  const auto m = (h * h.Inverse()).matrix();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(m[i][j], i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace safit

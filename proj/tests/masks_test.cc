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
#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "safit/mask_io.h"
#include "support/fixtures.h"

namespace safit {
namespace {

std::size_t CountOn(const Mask& m, float threshold = 0.5f) {
  return static_cast<std::size_t>(
      std::count_if(m.values().begin(), m.values().end(),
                    [threshold](float v) { return v >= threshold; }));
}

// Integer-aligned boxes, one per cell of a 6x6 grid of 60 px cells, with a
// one-pixel moat so no two boxes touch even diagonally.
std::vector<BBox> SeparatedBoxes(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 12);
  std::uniform_int_distribution<int> cell(0, 35);
  std::uniform_int_distribution<int> size(1, 58);
  std::vector<int> cells;
  const int n = count(rng);
  while (static_cast<int>(cells.size()) < n) {
    const int c = cell(rng);
    if (std::find(cells.begin(), cells.end(), c) == cells.end()) {
      cells.push_back(c);
    }
  }
  std::sort(cells.begin(), cells.end());
  std::vector<BBox> boxes;
  for (int c : cells) {
    const int w = size(rng);
    const int h = size(rng);
    const int x = (c % 6) * 60 + 1 + static_cast<int>(rng() % (59 - w));
    const int y = (c / 6) * 60 + 1 + static_cast<int>(rng() % (59 - h));
    boxes.push_back(BBox::FromTopLeft(x, y, w, h));
  }
  return boxes;
}

bool SameBoxSet(std::vector<BBox> a, std::vector<BBox> b) {
  auto key = [](const BBox& x, const BBox& y) {
    return std::pair(x.y1(), x.x1()) < std::pair(y.y1(), y.x1());
  };
  std::sort(a.begin(), a.end(), key);
  std::sort(b.begin(), b.end(), key);
  return a == b;
}

std::vector<BBox> Boxes(const std::vector<Detection>& dets) {
  std::vector<BBox> out;
  for (const auto& d : dets) out.push_back(d.bbox);
  return out;
}

TEST(RasterizeTest, HardEightByEightSetsSixtyFourPixels) {
  const BBox box = BBox::FromTopLeft(10, 20, 8, 8);
  const Mask m = Rasterize({&box, 1}, MaskMode::kHard, 64, 64, 3);
  EXPECT_EQ(CountOn(m), 64u);
  EXPECT_EQ(m.class_id(), 3);
  EXPECT_EQ(m.at(10, 20), 1.0f);
  EXPECT_EQ(m.at(17, 27), 1.0f);
  EXPECT_EQ(m.at(18, 27), 0.0f);
  EXPECT_EQ(m.at(9, 20), 0.0f);
}

TEST(RasterizeTest, SoftValuesAtCenterAndCorner) {
  const BBox even = BBox::FromTopLeft(0, 0, 8, 8);
  const Mask m = Rasterize({&even, 1}, MaskMode::kSoft, 16, 16);
  EXPECT_NEAR(m.at(0, 0), 0.04677062238395898, 1e-7);
  EXPECT_FLOAT_EQ(m.at(3, 3), m.at(4, 4));
  EXPECT_EQ(m.at(8, 0), 0.0f);

  const BBox odd = BBox::FromTopLeft(2, 2, 7, 9);
  const Mask o = Rasterize({&odd, 1}, MaskMode::kSoft, 16, 16);
  EXPECT_EQ(o.at(5, 6), 1.0f);
  EXPECT_LT(o.at(4, 6), 1.0f);
}

TEST(RasterizeTest, OverlappingBoxesComposeByMax) {
  const std::vector<BBox> boxes = {BBox::FromTopLeft(0, 0, 10, 10),
                                   BBox::FromTopLeft(5, 5, 10, 10)};
  const Mask hard = Rasterize(boxes, MaskMode::kHard, 20, 20);
  EXPECT_EQ(CountOn(hard), 175u);
  EXPECT_EQ(*std::max_element(hard.values().begin(), hard.values().end()),
            1.0f);

  const Mask soft = Rasterize(boxes, MaskMode::kSoft, 20, 20);
  const Mask a = Rasterize({&boxes[0], 1}, MaskMode::kSoft, 20, 20);
  const Mask b = Rasterize({&boxes[1], 1}, MaskMode::kSoft, 20, 20);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      EXPECT_EQ(soft.at(x, y), std::max(a.at(x, y), b.at(x, y)));
    }
  }
}

TEST(RasterizeTest, UsesPixelCentres) {
  // Covers the centres 1.5 and 2.5 only.
  const BBox box = BBox::FromCorners(1.2, 0.0, 3.5, 1.0);
  const Mask m = Rasterize({&box, 1}, MaskMode::kHard, 8, 1);
  EXPECT_EQ(m.at(0, 0), 0.0f);
  EXPECT_EQ(m.at(1, 0), 1.0f);
  EXPECT_EQ(m.at(2, 0), 1.0f);
  EXPECT_EQ(m.at(3, 0), 0.0f);
}

TEST(RasterizeTest, ClipsToImageAndValidates) {
  const BBox box = BBox::FromTopLeft(-4, -4, 8, 8);
  EXPECT_EQ(CountOn(Rasterize({&box, 1}, MaskMode::kHard, 10, 10)), 16u);
  EXPECT_THROW(Rasterize({}, MaskMode::kHard, 0, 10), std::invalid_argument);
  EXPECT_THROW(Rasterize({&box, 1}, MaskMode::kSoft, 10, 10, 0, {0.0}),
               std::invalid_argument);
}

TEST(RasterizeTest, MirrorSymmetry) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<BBox> boxes = SeparatedBoxes(rng);
    std::vector<BBox> mirrored;
    for (const auto& b : boxes) {
      mirrored.push_back(BBox::FromCorners(360 - b.x2(), b.y1(), 360 - b.x1(),
                                           b.y2()));
    }
    for (MaskMode mode : {MaskMode::kHard, MaskMode::kSoft}) {
      const Mask m = Rasterize(boxes, mode, 360, 360);
      const Mask r = Rasterize(mirrored, mode, 360, 360);
      for (int y = 0; y < 360; ++y) {
        for (int x = 0; x < 360; ++x) {
          ASSERT_NEAR(m.at(x, y), r.at(359 - x, y), 1e-6);
        }
      }
    }
  }
}

TEST(MaskToBBoxesTest, DiagonalPixelsDependOnConnectivity) {
  Mask m(4, 4);
  m.at(0, 0) = 1.0f;
  m.at(1, 1) = 1.0f;
  m.at(2, 2) = 1.0f;
  m.at(3, 0) = 0.8f;
  const auto eight = MaskToBBoxes(m, 0.5, Connectivity::kEight);
  ASSERT_EQ(eight.size(), 2u);
  EXPECT_EQ(eight[0].bbox, BBox::FromCorners(0, 0, 3, 3));
  EXPECT_DOUBLE_EQ(eight[0].score, 1.0);
  EXPECT_NEAR(eight[1].score, 0.8, 1e-7);
  EXPECT_EQ(MaskToBBoxes(m, 0.5, Connectivity::kFour).size(), 4u);
}

TEST(MaskToBBoxesTest, ThresholdIsInclusive) {
  Mask m(3, 1);
  m.at(0, 0) = 0.5f;
  m.at(2, 0) = 0.49f;
  EXPECT_EQ(MaskToBBoxes(m).size(), 1u);
  EXPECT_THROW(MaskToBBoxes(m, 1.0), std::invalid_argument);
  EXPECT_THROW(MaskToBBoxes(m, 0.0), std::invalid_argument);
}

TEST(MaskToBBoxesTest, HardRoundTripRecoversSeparatedBoxes) {
  std::mt19937_64 rng(21);
  for (int frame = 0; frame < 100; ++frame) {
    const std::vector<BBox> boxes = SeparatedBoxes(rng);
    const Mask m = Rasterize(boxes, MaskMode::kHard, 360, 360, 2);
    const auto dets = MaskToBBoxes(m);
    ASSERT_TRUE(SameBoxSet(Boxes(dets), boxes)) << "frame " << frame;
    for (const auto& d : dets) {
      EXPECT_EQ(d.class_id, 2);
      EXPECT_EQ(d.score, 1.0);
    }
  }
}

TEST(MaskToBBoxesTest, RecoveredBoxIsMinimal) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coord(0, 31);
  for (int trial = 0; trial < 200; ++trial) {
    Mask m(32, 32);
    std::vector<std::pair<int, int>> on;
    int x = coord(rng), y = coord(rng);
    // A random 8-connected walk forms one component.
    for (int step = 0; step < 20; ++step) {
      m.at(x, y) = 1.0f;
      on.emplace_back(x, y);
      x = std::clamp(x + static_cast<int>(rng() % 3) - 1, 0, 31);
      y = std::clamp(y + static_cast<int>(rng() % 3) - 1, 0, 31);
    }
    const auto dets = MaskToBBoxes(m);
    ASSERT_EQ(dets.size(), 1u);
    const BBox& b = dets[0].bbox;
    for (auto [px, py] : on) {
      EXPECT_TRUE(px >= b.x1() && px + 1 <= b.x2());
      EXPECT_TRUE(py >= b.y1() && py + 1 <= b.y2());
    }
    auto touches = [&](auto pred) {
      return std::any_of(on.begin(), on.end(), pred);
    };
    EXPECT_TRUE(touches([&](auto p) { return p.first == b.x1(); }));
    EXPECT_TRUE(touches([&](auto p) { return p.first + 1 == b.x2(); }));
    EXPECT_TRUE(touches([&](auto p) { return p.second == b.y1(); }));
    EXPECT_TRUE(touches([&](auto p) { return p.second + 1 == b.y2(); }));
  }
}

TEST(MaskToBBoxesTest, SoftRoundTripKeepsComponentCount) {
  std::mt19937_64 rng(33);
  for (int frame = 0; frame < 20; ++frame) {
    // A 2x2 box peaks at exp(-1) between pixel centres and vanishes at 0.5.
    std::vector<BBox> boxes = SeparatedBoxes(rng);
    std::erase_if(boxes, [](const BBox& b) {
      return std::min(b.w(), b.h()) < 3.0;
    });
    const Mask m = Rasterize(boxes, MaskMode::kSoft, 360, 360);
    const auto dets = MaskToBBoxes(m, 0.5);
    EXPECT_EQ(dets.size(), boxes.size());
    for (const auto& d : dets) {
      EXPECT_GE(d.score, 0.5);
      EXPECT_LE(d.score, 1.0);
    }
  }
}

TEST(RasterizeImageTest, SelectsImageAndClass) {
  testing::FixtureBuilder b;
  b.Category(1).Category(2).Image(1, "s", 0, Modality::kVisible, 32, 32);
  b.Image(2, "s", 1, Modality::kVisible, 32, 32);
  b.Gt(1, 1, BBox::FromTopLeft(0, 0, 4, 4));
  b.Gt(1, 2, BBox::FromTopLeft(10, 10, 2, 2));
  b.Gt(2, 1, BBox::FromTopLeft(20, 20, 5, 5));
  const GroundTruth gt = b.gt();
  const Mask m = RasterizeImage(gt, 1, 1, MaskMode::kHard);
  EXPECT_EQ(m.width(), 32);
  EXPECT_EQ(CountOn(m), 16u);
  EXPECT_THROW(RasterizeImage(gt, 9, 1, MaskMode::kHard),
               std::invalid_argument);
}

class MaskIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("safit_mask_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::filesystem::path dir_;
};

TEST_F(MaskIoTest, PngRoundTripOfHardMask) {
  std::mt19937_64 rng(2);
  const std::vector<BBox> boxes = SeparatedBoxes(rng);
  const Mask m = Rasterize(boxes, MaskMode::kHard, 360, 360, 4);
  WriteMaskPng(Path("m.png"), m);
  const Mask back = ReadMask(Path("m.png"), 4);
  ASSERT_EQ(back.width(), 360);
  ASSERT_EQ(back.height(), 360);
  EXPECT_EQ(back.class_id(), 4);
  EXPECT_TRUE(std::equal(m.values().begin(), m.values().end(),
                         back.values().begin()));
}

TEST_F(MaskIoTest, FloatRoundTripIsExact) {
  const BBox box = BBox::FromTopLeft(3, 4, 11, 6);
  const Mask m = Rasterize({&box, 1}, MaskMode::kSoft, 20, 15, -7);
  WriteMaskFloat(Path("m.sfm"), m);
  const Mask back = ReadMask(Path("m.sfm"));
  EXPECT_EQ(back.class_id(), -7);
  EXPECT_EQ(back.width(), 20);
  EXPECT_TRUE(std::equal(m.values().begin(), m.values().end(),
                         back.values().begin()));
}

TEST_F(MaskIoTest, MissingOrCorruptFilesThrow) {
  EXPECT_THROW(ReadMask(Path("absent.png")), FileError);
  std::FILE* f = std::fopen(Path("bad.sfm").c_str(), "wb");
  std::fputs("NOTAMASK", f);
  std::fclose(f);
  EXPECT_THROW(ReadMask(Path("bad.sfm")), FileError);
}

}  // namespace
}  // namespace safit

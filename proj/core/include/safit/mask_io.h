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

#ifndef SAFIT_MASK_IO_H_
#define SAFIT_MASK_IO_H_

#include <cstdint>
#include <string>

#include "safit/masks.h"

namespace safit {

enum class MaskFormat { kPng, kFloat };

// 8-bit grayscale PNG; values are quantized as round(v * 255).
void WriteMaskPng(const std::string& path, const Mask& mask);
Mask ReadMaskPng(const std::string& path, std::int64_t class_id = 0);

// Raw float container, little-endian:
//   bytes 0-7   magic "SAFMASK1"
//   bytes 8-11  uint32 width
//   bytes 12-15 uint32 height
//   bytes 16-23 int64 class_id
//   then width * height float32 values, row-major.
void WriteMaskFloat(const std::string& path, const Mask& mask);
Mask ReadMaskFloat(const std::string& path);

// Dispatches on the file extension: ".png" or ".sfm".
Mask ReadMask(const std::string& path, std::int64_t class_id = 0);

}  // namespace safit

#endif  // SAFIT_MASK_IO_H_

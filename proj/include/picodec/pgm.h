// Copyright 2026 The picodec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PICODEC_PGM_H_
#define PICODEC_PGM_H_

#include <string>
#include <string_view>

#include "picodec/image.h"

namespace picodec {

// Reads binary (P5) or ASCII (P2) graymaps with maxval up to 65535. Samples
// are divided by maxval. Errors: kMalformedHeader, kTruncated,
// kUnsupportedFormat (any other magic), kIo.
Image LoadPgm(const std::string& path);
Image ParsePgm(std::string_view bytes);

// Writes P5 with maxval 255 after clipping to [0, 1] and rounding half up.
void SavePgm(const Image& img, const std::string& path);
std::string EncodePgm(const Image& img);

// Writes a mask as P5: 255 for stored pixels, 0 elsewhere.
void SaveMaskPgm(const Mask& mask, const std::string& path);

}  // namespace picodec

#endif  // PICODEC_PGM_H_

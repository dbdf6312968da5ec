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

// The .pic container.
//
//   offset  size  field
//        0     4  magic "PIC1"
//        4     4  width, uint32 little-endian
//        8     4  height, uint32 little-endian
//       12     1  method id (see Method)
//       13     3  reserved, zero
//       16     8  alpha, IEEE-754 binary64 little-endian
//       24     4  big-step iteration count N, uint32 little-endian (0 unless
//                 the method is L2-INSTA)
//       28     ceil(W*H/8)  mask bits, row-major, most significant bit first,
//                 zero padding in the last byte
//        .     popcount     tonal values, one byte per stored pixel in
//                 row-major order, round(255 * clip(v, 0, 1)) half up
//
// Total size is 28 + ceil(W*H/8) + popcount(mask).

#ifndef PICODEC_CODEC_H_
#define PICODEC_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "picodec/diffusion.h"
#include "picodec/encoders.h"
#include "picodec/image.h"

namespace picodec {

inline constexpr std::size_t kPayloadHeaderSize = 28;

struct Payload {
  Method method = Method::kH1;
  double alpha = 0.0;
  std::uint32_t big_step_n = 0;
  Mask mask;
  Image tonal;  // values on the mask; 0 elsewhere

  bool operator==(const Payload&) const = default;
};

// Quantizes the tonal values to 8 bits; alpha and N come from cfg (N only
// for L2-INSTA).
Payload MakePayload(const EncodeResult& result, const EncoderConfig& cfg);

std::vector<std::uint8_t> Serialize(const Payload& payload);
std::vector<std::uint8_t> Serialize(const EncodeResult& result,
                                    const EncoderConfig& cfg);

// Errors: kBadMagic, kTruncated (header or mask bits cut short),
// kValueCountMismatch (tonal byte count differs from popcount),
// kMalformedHeader (zero dimension, unknown method, nonzero reserved or
// padding bits).
Payload Deserialize(std::span<const std::uint8_t> bytes);

// L2-INSTA: one implicit step of size N * alpha; everything else: harmonic
// inpainting of the stored values.
Image Decode(const Payload& payload, const SolveControls& ctl = {});

std::size_t PayloadSize(int width, int height, std::size_t stored);

void WritePayloadFile(const std::vector<std::uint8_t>& bytes, const std::string& path);
std::vector<std::uint8_t> ReadPayloadFile(const std::string& path);

}  // namespace picodec

#endif  // PICODEC_CODEC_H_

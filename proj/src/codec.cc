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

#include "picodec/codec.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "picodec/image_ops.h"

namespace picodec {
namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'I', 'C', '1'};

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t GetU32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in[at + b]) << (8 * b);
  return v;
}

std::uint64_t GetU64(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(in[at + b]) << (8 * b);
  return v;
}

std::size_t MaskBytes(std::size_t pixels) { return (pixels + 7) / 8; }

}  // namespace

std::size_t PayloadSize(int width, int height, std::size_t stored) {
  return kPayloadHeaderSize +
         MaskBytes(static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) +
         stored;
}

Payload MakePayload(const EncodeResult& result, const EncoderConfig& cfg) {
  RequireSameShape(result.mask, result.tonal, "serialize");
  Payload p;
  p.method = result.method;
  p.alpha = cfg.alpha;
  p.big_step_n = result.method == Method::kL2Insta
                     ? static_cast<std::uint32_t>(cfg.iterations_n)
                     : 0;
  p.mask = result.mask;
  p.tonal = Image(result.tonal.width(), result.tonal.height());
  for (std::size_t i = 0; i < p.mask.size(); ++i) {
    if (p.mask.Test(i)) p.tonal[i] = QuantizeTo8Bit(result.tonal[i]) / 255.0;
  }
  return p;
}

std::vector<std::uint8_t> Serialize(const Payload& payload) {
  RequireSameShape(payload.mask, payload.tonal, "serialize");
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (static_cast<unsigned long long>(payload.mask.width()) > kMax ||
      static_cast<unsigned long long>(payload.mask.height()) > kMax) {
    throw Error(ErrorCode::kOverflow, "image dimensions exceed 32 bits");
  }
  const std::size_t stored = payload.mask.Count();
  std::vector<std::uint8_t> out;
  out.reserve(PayloadSize(payload.mask.width(), payload.mask.height(), stored));
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  PutU32(out, static_cast<std::uint32_t>(payload.mask.width()));
  PutU32(out, static_cast<std::uint32_t>(payload.mask.height()));
  out.push_back(static_cast<std::uint8_t>(payload.method));
  out.insert(out.end(), 3, 0);
  const auto alpha_bits = std::bit_cast<std::uint64_t>(payload.alpha);
  PutU32(out, static_cast<std::uint32_t>(alpha_bits));
  PutU32(out, static_cast<std::uint32_t>(alpha_bits >> 32));
  PutU32(out, payload.big_step_n);

  const std::size_t mask_at = out.size();
  out.resize(mask_at + MaskBytes(payload.mask.size()), 0);
  for (std::size_t i = 0; i < payload.mask.size(); ++i) {
    if (payload.mask.Test(i)) {
      out[mask_at + i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
  }
  for (std::size_t i = 0; i < payload.mask.size(); ++i) {
    if (payload.mask.Test(i)) out.push_back(QuantizeTo8Bit(payload.tonal[i]));
  }
  return out;
}

std::vector<std::uint8_t> Serialize(const EncodeResult& result,
                                    const EncoderConfig& cfg) {
  return Serialize(MakePayload(result, cfg));
}

Payload Deserialize(std::span<const std::uint8_t> bytes) {
  const std::size_t head = std::min(bytes.size(), sizeof(kMagic));
  if (bytes.empty() || std::memcmp(bytes.data(), kMagic, head) != 0) {
    throw Error(ErrorCode::kBadMagic, "bad magic: not a PIC1 payload");
  }
  if (bytes.size() < kPayloadHeaderSize) {
    throw Error(ErrorCode::kTruncated, "payload header truncated");
  }
  const std::uint32_t width = GetU32(bytes, 4);
  const std::uint32_t height = GetU32(bytes, 8);
  const std::uint8_t method = bytes[12];
  if (width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20)) {
    throw Error(ErrorCode::kMalformedHeader, "payload dimensions out of range");
  }
  if (method > static_cast<std::uint8_t>(Method::kDens)) {
    throw Error(ErrorCode::kMalformedHeader, "unknown method id");
  }
  if (bytes[13] != 0 || bytes[14] != 0 || bytes[15] != 0) {
    throw Error(ErrorCode::kMalformedHeader, "reserved header bytes are not zero");
  }
  Payload p;
  p.method = static_cast<Method>(method);
  p.alpha = std::bit_cast<double>(GetU64(bytes, 16));
  p.big_step_n = GetU32(bytes, 24);

  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  const std::size_t mask_bytes = MaskBytes(pixels);
  if (bytes.size() < kPayloadHeaderSize + mask_bytes) {
    throw Error(ErrorCode::kTruncated, "payload mask bits truncated");
  }
  p.mask = Mask(static_cast<int>(width), static_cast<int>(height));
  const auto bits = bytes.subspan(kPayloadHeaderSize, mask_bytes);
  for (std::size_t i = 0; i < pixels; ++i) {
    if (bits[i / 8] & (0x80u >> (i % 8))) p.mask.Set(i);
  }
  for (std::size_t i = pixels; i < mask_bytes * 8; ++i) {
    if (bits[i / 8] & (0x80u >> (i % 8))) {
      throw Error(ErrorCode::kMalformedHeader, "nonzero mask padding bits");
    }
  }
  const std::size_t stored = p.mask.Count();
  const auto values = bytes.subspan(kPayloadHeaderSize + mask_bytes);
  if (values.size() != stored) {
    throw Error(ErrorCode::kValueCountMismatch,
                "value count mismatch: " + std::to_string(values.size()) +
                    " tonal bytes for " + std::to_string(stored) +
                    " stored pixels");
  }
  p.tonal = Image(static_cast<int>(width), static_cast<int>(height));
  std::size_t next = 0;
  for (std::size_t i = 0; i < pixels; ++i) {
    if (p.mask.Test(i)) p.tonal[i] = values[next++] / 255.0;
  }
  return p;
}

Image Decode(const Payload& payload, const SolveControls& ctl) {
  if (payload.method == Method::kL2Insta) {
    return DecodeL2Insta(payload.mask, payload.tonal, payload.alpha,
                         static_cast<int>(payload.big_step_n), ctl);
  }
  return HarmonicInpaint(payload.mask, payload.tonal, ctl);
}

void WritePayloadFile(const std::vector<std::uint8_t>& bytes, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

std::vector<std::uint8_t> ReadPayloadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

}  // namespace picodec

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
#include "picodec/pgm.h"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "picodec/image_ops.h"

namespace picodec {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments.
  void SkipSeparators() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Reads an unsigned decimal; truncated_code is raised when the input ends
  // before any digit.
  unsigned long ReadNumber(const char* what, ErrorCode truncated_code) {
    SkipSeparators();
    if (pos_ >= bytes_.size()) {
      throw Error(truncated_code, std::string("pgm: missing ") + what);
    }
    if (!std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::kMalformedHeader,
                  std::string("pgm: expected number for ") + what);
    }
    unsigned long value = 0;
    while (pos_ < bytes_.size() &&
           std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFul) {
        throw Error(ErrorCode::kMalformedHeader,
                    std::string("pgm: number too large for ") + what);
      }
      ++pos_;
    }
    return value;
  }

  std::size_t pos() const { return pos_; }
  void Advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image ParsePgm(std::string_view bytes) {
  if (bytes.size() < 2) {
    throw Error(ErrorCode::kMalformedHeader, "pgm: file too short for magic");
  }
  if (bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported format: magic '" + std::string(bytes.substr(0, 2)) +
                    "', expected P2 or P5");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader reader(bytes);
  reader.Advance(2);
  const unsigned long width = reader.ReadNumber("width", ErrorCode::kMalformedHeader);
  const unsigned long height = reader.ReadNumber("height", ErrorCode::kMalformedHeader);
  const unsigned long maxval = reader.ReadNumber("maxval", ErrorCode::kMalformedHeader);
  if (width == 0 || height == 0 || width > 1u << 20 || height > 1u << 20) {
    throw Error(ErrorCode::kMalformedHeader, "pgm: bad dimensions");
  }
  if (maxval == 0 || maxval > 65535) {
    throw Error(ErrorCode::kMalformedHeader, "pgm: maxval out of range");
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<double> data(count);
  const double denom = static_cast<double>(maxval);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (reader.pos() >= bytes.size() ||
        !std::isspace(static_cast<unsigned char>(bytes[reader.pos()]))) {
      throw Error(ErrorCode::kTruncated, "pgm: missing raster");
    }
    reader.Advance(1);
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    if (bytes.size() - reader.pos() < count * bytes_per_sample) {
      throw Error(ErrorCode::kTruncated, "pgm: truncated raster");
    }
    const auto* raster =
        reinterpret_cast<const unsigned char*>(bytes.data() + reader.pos());
    for (std::size_t i = 0; i < count; ++i) {
      unsigned long sample = bytes_per_sample == 2
                                 ? (static_cast<unsigned long>(raster[2 * i]) << 8) |
                                       raster[2 * i + 1]
                                 : raster[i];
      if (sample > maxval) {
        throw Error(ErrorCode::kMalformedHeader, "pgm: sample exceeds maxval");
      }
      data[i] = static_cast<double>(sample) / denom;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned long sample = reader.ReadNumber("sample", ErrorCode::kTruncated);
      if (sample > maxval) {
        throw Error(ErrorCode::kMalformedHeader, "pgm: sample exceeds maxval");
      }
      data[i] = static_cast<double>(sample) / denom;
    }
  }
  return Image(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

Image LoadPgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return ParsePgm(bytes);
}

std::string EncodePgm(const Image& img) {
  std::ostringstream out;
  out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  std::string raster(img.size(), '\0');
  for (std::size_t i = 0; i < img.size(); ++i) {
    raster[i] = static_cast<char>(QuantizeTo8Bit(img[i]));
  }
  out << raster;
  return out.str();
}

namespace {

void WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace

void SavePgm(const Image& img, const std::string& path) {
  WriteFile(path, EncodePgm(img));
}

void SaveMaskPgm(const Mask& mask, const std::string& path) {
  Image img(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) img[i] = mask.Test(i) ? 1.0 : 0.0;
  SavePgm(img, path);
}

}  // namespace picodec

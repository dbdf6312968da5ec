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
#include "picodec/error.h"

namespace picodec {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorCode::kMalformedHeader:
      return "malformed header";
    case ErrorCode::kTruncated:
      return "truncated";
    case ErrorCode::kUnsupportedFormat:
      return "unsupported format";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kNotConverged:
      return "not converged";
    case ErrorCode::kUnderdetermined:
      return "underdetermined";
    case ErrorCode::kDegenerateCriterion:
      return "degenerate criterion";
    case ErrorCode::kBadMagic:
      return "bad magic";
    case ErrorCode::kValueCountMismatch:
      return "value count mismatch";
    case ErrorCode::kOverflow:
      return "overflow";
  }
  return "unknown";
}

}  // namespace picodec

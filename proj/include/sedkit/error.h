// include/sedkit/error.h

// Copyright 2026  The sedkit Authors

// See the top-level COPYING file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SEDKIT_ERROR_H_
#define SEDKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sedkit {

enum class ErrorKind {
  kInvalidWaveform,
  kSampleRateMismatch,
  kDegenerateFilterbank,
  kClipTooShort,
  kDomainMismatch,
  kInvalidConfig,
  kShapeMismatch,
  kNoSignalPower,
  kUnknownClip,
  kUnknownClass,
  kInvalidGroundTruth,
  kNoOperatingPoints,
  kPlacementFailure,
  kParseError,
  kIoError,
};

/// Stable name used in diagnostics, e.g. "DegenerateFilterbank".
std::string_view ErrorName(ErrorKind kind);

/// True for errors caused by a bad configuration rather than bad input data.
bool IsConfigError(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(ErrorName(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sedkit

#endif  // SEDKIT_ERROR_H_

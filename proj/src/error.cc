// src/error.cc

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

#include "sedkit/error.h"

namespace sedkit {

std::string_view ErrorName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidWaveform: return "InvalidWaveform";
    case ErrorKind::kSampleRateMismatch: return "SampleRateMismatch";
    case ErrorKind::kDegenerateFilterbank: return "DegenerateFilterbank";
    case ErrorKind::kClipTooShort: return "ClipTooShort";
    case ErrorKind::kDomainMismatch: return "DomainMismatch";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kNoSignalPower: return "NoSignalPower";
    case ErrorKind::kUnknownClip: return "UnknownClip";
    case ErrorKind::kUnknownClass: return "UnknownClass";
    case ErrorKind::kInvalidGroundTruth: return "InvalidGroundTruth";
    case ErrorKind::kNoOperatingPoints: return "NoOperatingPoints";
    case ErrorKind::kPlacementFailure: return "PlacementFailure";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

bool IsConfigError(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateFilterbank:
    case ErrorKind::kInvalidConfig:
    case ErrorKind::kPlacementFailure:
      return true;
    default:
      return false;
  }
}

}  // namespace sedkit

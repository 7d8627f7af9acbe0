// include/sedkit/postprocess.h

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

#ifndef SEDKIT_POSTPROCESS_H_
#define SEDKIT_POSTPROCESS_H_

#include <string>
#include <vector>

#include "sedkit/matrix.h"

namespace sedkit {

/// Detector output for one clip.
struct ScoreMatrix {
  std::string clip_id;
  Matrix strong;  // T x C, in [0, 1]
  Vector weak;    // C, in [0, 1]
  double hop_seconds = 0.016;
  double clip_duration_seconds = 10.0;
  std::vector<std::string> class_names;

  Eigen::Index num_frames() const { return strong.rows(); }
  Eigen::Index num_classes() const { return strong.cols(); }
  /// Throws ShapeMismatch / InvalidConfig when an invariant does not hold.
  void Validate() const;
};

struct Event {
  std::string class_name;
  double onset = 0.0;
  double offset = 0.0;

  double duration() const { return offset - onset; }
  friend bool operator==(const Event &, const Event &) = default;
};

struct DecodeConfig {
  /// One entry shared by all classes, or one per class.
  std::vector<double> threshold{0.5};
  int median_len = 7;
  bool weak_masking = true;
  /// Emit full-clip events from weak scores instead of decoding frames.
  bool weak_sed = false;

  void Validate() const;
};

/// Expands a one-element threshold list to num_classes entries.
std::vector<double> ExpandThresholds(const std::vector<double> &threshold,
                                     Eigen::Index num_classes);

/// grid(c, t) = strong(t, c) >= threshold[c]. Output is C x T.
BinaryGrid Binarize(const ScoreMatrix &scores, const std::vector<double> &threshold);

/// Binarize, then clear every class whose weak score is below its threshold.
BinaryGrid ApplyWeakMasking(const ScoreMatrix &scores, const std::vector<double> &threshold);

/// Per-row sliding median along time; frames outside the clip count as 0.
BinaryGrid MedianFilter(const BinaryGrid &grid, int median_len);

/// Maximal runs of ones become events, sorted by (class index, onset).
std::vector<Event> DecodeEvents(const BinaryGrid &grid, double hop_seconds,
                                double clip_duration_seconds,
                                const std::vector<std::string> &class_names);

/// One full-clip event per class whose weak score clears its threshold.
std::vector<Event> WeakSedEvents(const ScoreMatrix &scores, const std::vector<double> &threshold);

/// Full decode chain for one clip according to cfg.
std::vector<Event> DecodeClip(const ScoreMatrix &scores, const DecodeConfig &cfg);

/// Inverse of DecodeEvents for frame-aligned events: C x num_frames grid with
/// frames [round(onset/hop), round(offset/hop)) set.
BinaryGrid RasterizeEvents(const std::vector<Event> &events, Eigen::Index num_frames,
                           double hop_seconds, const std::vector<std::string> &class_names);

}  // namespace sedkit

#endif  // SEDKIT_POSTPROCESS_H_

// src/postprocess.cc

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

#include "sedkit/postprocess.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sedkit/error.h"

namespace sedkit {

void ScoreMatrix::Validate() const {
  const auto n_classes = static_cast<std::size_t>(num_classes());
  if (weak.size() != num_classes() || class_names.size() != n_classes)
    throw Error(ErrorKind::kShapeMismatch,
                clip_id + ": strong, weak and class name counts disagree");
  if (!(hop_seconds > 0.0) || !(clip_duration_seconds > 0.0))
    throw Error(ErrorKind::kInvalidConfig, clip_id + ": hop and duration must be positive");
  if (num_frames() * hop_seconds < clip_duration_seconds - hop_seconds - 1e-9)
    throw Error(ErrorKind::kShapeMismatch, clip_id + ": score frames do not cover the clip");
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  for (Eigen::Index i = 0; i < strong.size(); ++i)
    if (!in_unit(strong.data()[i]))
      throw Error(ErrorKind::kShapeMismatch, clip_id + ": strong score outside [0, 1]");
  for (Eigen::Index i = 0; i < weak.size(); ++i)
    if (!in_unit(weak[i]))
      throw Error(ErrorKind::kShapeMismatch, clip_id + ": weak score outside [0, 1]");
}

void DecodeConfig::Validate() const {
  if (threshold.empty())
    throw Error(ErrorKind::kInvalidConfig, "at least one threshold is required");
  for (double t : threshold)
    if (!(t > 0.0 && t < 1.0))
      throw Error(ErrorKind::kInvalidConfig, "thresholds must lie in (0, 1)");
  if (median_len < 1 || median_len % 2 == 0)
    throw Error(ErrorKind::kInvalidConfig,
                "median filter length must be an odd positive integer, got " +
                    std::to_string(median_len));
}

std::vector<double> ExpandThresholds(const std::vector<double> &threshold,
                                     Eigen::Index num_classes) {
  const auto n = static_cast<std::size_t>(num_classes);
  if (threshold.size() == 1) return std::vector<double>(n, threshold[0]);
  if (threshold.size() != n)
    throw Error(ErrorKind::kInvalidConfig,
                "expected 1 or " + std::to_string(n) + " thresholds, got " +
                    std::to_string(threshold.size()));
  return threshold;
}

BinaryGrid Binarize(const ScoreMatrix &scores, const std::vector<double> &threshold) {
  const auto tau = ExpandThresholds(threshold, scores.num_classes());
  BinaryGrid grid(scores.num_classes(), scores.num_frames());
  for (Eigen::Index c = 0; c < grid.rows(); ++c)
    for (Eigen::Index t = 0; t < grid.cols(); ++t)
      grid(c, t) = scores.strong(t, c) >= tau[c] ? 1 : 0;
  return grid;
}

BinaryGrid ApplyWeakMasking(const ScoreMatrix &scores, const std::vector<double> &threshold) {
  const auto tau = ExpandThresholds(threshold, scores.num_classes());
  BinaryGrid grid = Binarize(scores, tau);
  for (Eigen::Index c = 0; c < grid.rows(); ++c)
    if (!(scores.weak[c] >= tau[c])) grid.row(c).setZero();
  return grid;
}

BinaryGrid MedianFilter(const BinaryGrid &grid, int median_len) {
  if (median_len < 1 || median_len % 2 == 0)
    throw Error(ErrorKind::kInvalidConfig,
                "median filter length must be odd, got " + std::to_string(median_len));
  const Eigen::Index half = median_len / 2;
  const Eigen::Index n_frames = grid.cols();
  BinaryGrid out = BinaryGrid::Zero(grid.rows(), n_frames);
  for (Eigen::Index c = 0; c < grid.rows(); ++c) {
    // Running count of ones in the window [t - half, t + half].
    int ones = 0;
    for (Eigen::Index t = 0; t < std::min(half, n_frames); ++t) ones += grid(c, t);
    for (Eigen::Index t = 0; t < n_frames; ++t) {
      if (t + half < n_frames) ones += grid(c, t + half);
      if (t - half - 1 >= 0) ones -= grid(c, t - half - 1);
      out(c, t) = ones > half ? 1 : 0;
    }
  }
  return out;
}

std::vector<Event> DecodeEvents(const BinaryGrid &grid, double hop_seconds,
                                double clip_duration_seconds,
                                const std::vector<std::string> &class_names) {
  if (class_names.size() != static_cast<std::size_t>(grid.rows()))
    throw Error(ErrorKind::kShapeMismatch, "class name count does not match grid rows");
  std::vector<Event> events;
  const Eigen::Index n_frames = grid.cols();
  for (Eigen::Index c = 0; c < grid.rows(); ++c) {
    Eigen::Index t = 0;
    while (t < n_frames) {
      if (!grid(c, t)) {
        ++t;
        continue;
      }
      Eigen::Index start = t;
      while (t < n_frames && grid(c, t)) ++t;
      double onset = start * hop_seconds;
      double offset = std::min(t * hop_seconds, clip_duration_seconds);
      if (onset < offset) events.push_back({class_names[c], onset, offset});
    }
  }
  return events;
}

std::vector<Event> WeakSedEvents(const ScoreMatrix &scores, const std::vector<double> &threshold) {
  const auto tau = ExpandThresholds(threshold, scores.num_classes());
  std::vector<Event> events;
  for (Eigen::Index c = 0; c < scores.num_classes(); ++c)
    if (scores.weak[c] >= tau[c])
      events.push_back({scores.class_names[c], 0.0, scores.clip_duration_seconds});
  return events;
}

std::vector<Event> DecodeClip(const ScoreMatrix &scores, const DecodeConfig &cfg) {
  if (cfg.weak_sed) return WeakSedEvents(scores, cfg.threshold);
  BinaryGrid grid = cfg.weak_masking ? ApplyWeakMasking(scores, cfg.threshold)
                                     : Binarize(scores, cfg.threshold);
  grid = MedianFilter(grid, cfg.median_len);
  return DecodeEvents(grid, scores.hop_seconds, scores.clip_duration_seconds,
                      scores.class_names);
}

BinaryGrid RasterizeEvents(const std::vector<Event> &events, Eigen::Index num_frames,
                           double hop_seconds, const std::vector<std::string> &class_names) {
  BinaryGrid grid = BinaryGrid::Zero(static_cast<Eigen::Index>(class_names.size()), num_frames);
  for (const Event &e : events) {
    auto it = std::find(class_names.begin(), class_names.end(), e.class_name);
    if (it == class_names.end())
      throw Error(ErrorKind::kUnknownClass, "event class '" + e.class_name + "'");
    const auto c = static_cast<Eigen::Index>(it - class_names.begin());
    auto start = static_cast<Eigen::Index>(std::llround(e.onset / hop_seconds));
    auto stop = static_cast<Eigen::Index>(std::llround(e.offset / hop_seconds));
    start = std::clamp<Eigen::Index>(start, 0, num_frames);
    stop = std::clamp<Eigen::Index>(stop, 0, num_frames);
    if (stop <= start && e.offset > e.onset && start < num_frames) stop = start + 1;
    for (Eigen::Index t = start; t < stop; ++t) grid(c, t) = 1;
  }
  return grid;
}

}  // namespace sedkit

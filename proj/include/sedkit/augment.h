// include/sedkit/augment.h

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

#ifndef SEDKIT_AUGMENT_H_
#define SEDKIT_AUGMENT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sedkit/frontend.h"
#include "sedkit/matrix.h"
#include "sedkit/rng.h"

namespace sedkit {

/// Labels paired with one feature matrix.
struct LabelSet {
  Matrix strong;  // C x T, entries in [0, 1]
  Vector weak;    // C
  std::vector<std::string> class_names;

  Eigen::Index num_classes() const { return strong.rows(); }
  Eigen::Index num_frames() const { return strong.cols(); }
  /// True when every strong entry is exactly 0 or 1.
  bool IsHard() const;
  /// weak[c] = max_t strong[c, t].
  void RecomputeWeak();
};

/// Empty label set (no classes) spanning num_frames.
LabelSet EmptyLabels(Eigen::Index num_frames);

struct FilterAugmentConfig {
  double db_min = -7.5;
  double db_max = 6.0;
  int band_min = 2;
  int band_max = 4;

  void Validate(Eigen::Index n_bins) const;
};

struct AugmentConfig {
  std::optional<FilterAugmentConfig> filter_aug;
  int freq_mask_max_bins = 0;
  int time_mask_min_frames = 7;
  int time_mask_max_frames = 30;
  int frameshift_max_frames = 54;
  double mixup_prob = 0.5;
  double mixup_alpha = 0.2;
  std::optional<std::pair<double, double>> noise_snr_db;

  void Validate() const;

  bool time_mask_enabled() const { return time_mask_max_frames > 0; }
  bool frame_shift_enabled() const { return frameshift_max_frames > 0; }
  bool mixup_enabled() const { return mixup_prob > 0.0; }
  bool freq_mask_enabled() const { return freq_mask_max_bins > 0; }
};

/// An AugmentConfig with every augmentation switched off.
AugmentConfig DisabledAugmentConfig();

// ---------------------------------------------------------------------------
// FilterAugment

/// One realization of the random band partition and gains.
struct FilterBands {
  std::vector<int> starts;      // first bin of each band, starts[0] == 0
  std::vector<double> gains_db; // one per band
};

/// Draws band count, boundaries and gains, in that order.
FilterBands SampleFilterBands(Eigen::Index n_bins, const FilterAugmentConfig &cfg, Rng &rng);

/// Multiplies every entry of band b by 10^(gains_db[b] / 20). Linear domain
/// only; a log-domain input gets the equivalent additive shift.
MelSpec ApplyFilterBands(const MelSpec &spec, const FilterBands &bands);

/// Random per-band amplitude gains on a linear-magnitude spectrogram.
/// Throws DomainMismatch for log-domain input.
MelSpec FilterAugment(const MelSpec &spec, const FilterAugmentConfig &cfg, Rng &rng);

/// FilterAugment on a log-magnitude spectrogram, using the additive form
/// g * ln(10) / 20 of each band gain. Same draws as FilterAugment.
MelSpec FilterAugmentLog(const MelSpec &spec, const FilterAugmentConfig &cfg, Rng &rng);

// ---------------------------------------------------------------------------
// SpecAugment-style masks

MelSpec ApplyFreqMask(const MelSpec &spec, Eigen::Index start, Eigen::Index width);
/// Width uniform in [0, max_bins], then start uniform in [0, M - width].
MelSpec FreqMask(const MelSpec &spec, int max_bins, Rng &rng);

std::pair<MelSpec, LabelSet> ApplyTimeMask(const MelSpec &spec, const LabelSet &labels,
                                           Eigen::Index start, Eigen::Index length);
/// Length uniform in [min, max] (clamped to T), then start uniform.
std::pair<MelSpec, LabelSet> TimeMask(const MelSpec &spec, const LabelSet &labels,
                                      const AugmentConfig &cfg, Rng &rng);

std::pair<MelSpec, LabelSet> ApplyFrameShift(const MelSpec &spec, const LabelSet &labels,
                                             Eigen::Index shift);
std::pair<MelSpec, LabelSet> FrameShift(const MelSpec &spec, const LabelSet &labels,
                                        int max_frames, Rng &rng);

// ---------------------------------------------------------------------------
// Mixup

std::pair<MelSpec, LabelSet> ApplyMixup(const std::pair<MelSpec, LabelSet> &a,
                                        const std::pair<MelSpec, LabelSet> &b, double lambda);
/// With probability cfg.mixup_prob draws lambda ~ Beta(alpha, alpha) and mixes
/// features, strong labels and weak labels; otherwise returns a.
std::pair<MelSpec, LabelSet> Mixup(const std::pair<MelSpec, LabelSet> &a,
                                   const std::pair<MelSpec, LabelSet> &b,
                                   const AugmentConfig &cfg, Rng &rng);

// ---------------------------------------------------------------------------
// Additive Gaussian noise

double SampleSnrDb(std::pair<double, double> snr_db, Rng &rng);
MelSpec AddNoiseAtSnr(const MelSpec &spec, double snr_db, Rng &rng);
/// Draws the SNR first, then the noise. Noise variance is P * 10^(-snr/10)
/// with P the mean squared entry of the matrix in its carried domain.
MelSpec AddGaussianNoise(const MelSpec &spec, std::pair<double, double> snr_db, Rng &rng);

// ---------------------------------------------------------------------------
// Student / teacher views

/// Label-preserving chain (FilterAugment, frequency mask, noise) with the
/// stages enabled in cfg. Works in either domain.
MelSpec AugmentLabelPreserving(const MelSpec &spec, const AugmentConfig &cfg, Rng &rng);

struct Views {
  std::vector<MelSpec> student;
  std::vector<MelSpec> teacher;
  std::vector<LabelSet> labels;
};

/// Frame shift, mixup and time masking are drawn once per item and shared by
/// both views; label-preserving augmentations get independent draws per view.
/// Item i draws from rng.Fork(stage).Fork(i), so results do not depend on
/// processing order.
Views MakeStudentTeacherViews(const std::vector<std::pair<MelSpec, LabelSet>> &batch,
                              const AugmentConfig &cfg, const Rng &rng);

}  // namespace sedkit

#endif  // SEDKIT_AUGMENT_H_

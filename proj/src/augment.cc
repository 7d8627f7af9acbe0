// src/augment.cc

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

#include "sedkit/augment.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sedkit/error.h"

namespace sedkit {

bool LabelSet::IsHard() const {
  for (Eigen::Index i = 0; i < strong.size(); ++i) {
    double v = strong.data()[i];
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

void LabelSet::RecomputeWeak() {
  weak = Vector::Zero(strong.rows());
  if (strong.cols() == 0) return;
  for (Eigen::Index c = 0; c < strong.rows(); ++c) weak[c] = strong.row(c).maxCoeff();
}

LabelSet EmptyLabels(Eigen::Index num_frames) {
  LabelSet labels;
  labels.strong = Matrix::Zero(0, num_frames);
  labels.weak = Vector::Zero(0);
  return labels;
}

void FilterAugmentConfig::Validate(Eigen::Index n_bins) const {
  if (!(db_min <= db_max))
    throw Error(ErrorKind::kInvalidConfig, "filter_aug db_min must not exceed db_max");
  if (band_min < 1 || band_min > band_max)
    throw Error(ErrorKind::kInvalidConfig, "filter_aug needs 1 <= band_min <= band_max");
  if (band_max > n_bins)
    throw Error(ErrorKind::kInvalidConfig,
                "filter_aug band_max " + std::to_string(band_max) + " exceeds " +
                    std::to_string(n_bins) + " mel bins");
}

void AugmentConfig::Validate() const {
  if (filter_aug) {
    if (!(filter_aug->db_min <= filter_aug->db_max) || filter_aug->band_min < 1 ||
        filter_aug->band_min > filter_aug->band_max)
      throw Error(ErrorKind::kInvalidConfig, "invalid filter_aug ranges");
  }
  if (freq_mask_max_bins < 0)
    throw Error(ErrorKind::kInvalidConfig, "freq_mask_max_bins must be >= 0");
  if (time_mask_min_frames < 0 || time_mask_min_frames > time_mask_max_frames)
    throw Error(ErrorKind::kInvalidConfig,
                "time_mask_min_frames must be in [0, time_mask_max_frames]");
  if (frameshift_max_frames < 0)
    throw Error(ErrorKind::kInvalidConfig, "frameshift_max_frames must be >= 0");
  if (!(mixup_prob >= 0.0 && mixup_prob <= 1.0))
    throw Error(ErrorKind::kInvalidConfig, "mixup_prob must lie in [0, 1]");
  if (!(mixup_alpha > 0.0))
    throw Error(ErrorKind::kInvalidConfig, "mixup_alpha must be positive");
  if (noise_snr_db && !(noise_snr_db->first <= noise_snr_db->second))
    throw Error(ErrorKind::kInvalidConfig, "noise_snr_db needs lo <= hi");
}

AugmentConfig DisabledAugmentConfig() {
  AugmentConfig cfg;
  cfg.time_mask_min_frames = 0;
  cfg.time_mask_max_frames = 0;
  cfg.frameshift_max_frames = 0;
  cfg.mixup_prob = 0.0;
  return cfg;
}

// ---------------------------------------------------------------------------

FilterBands SampleFilterBands(Eigen::Index n_bins, const FilterAugmentConfig &cfg, Rng &rng) {
  cfg.Validate(n_bins);
  const int n_bands = static_cast<int>(rng.UniformInt(cfg.band_min, cfg.band_max));

  // Partial Fisher-Yates over the interior boundary candidates 1..M-1.
  std::vector<int> candidates(static_cast<std::size_t>(n_bins - 1));
  for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = static_cast<int>(i) + 1;
  const int n_boundaries = n_bands - 1;
  for (int i = 0; i < n_boundaries; ++i) {
    auto j = rng.UniformInt(i, static_cast<std::int64_t>(candidates.size()) - 1);
    std::swap(candidates[i], candidates[j]);
  }

  FilterBands bands;
  bands.starts.push_back(0);
  bands.starts.insert(bands.starts.end(), candidates.begin(),
                      candidates.begin() + n_boundaries);
  std::sort(bands.starts.begin(), bands.starts.end());
  for (int b = 0; b < n_bands; ++b) bands.gains_db.push_back(rng.Uniform(cfg.db_min, cfg.db_max));
  return bands;
}

MelSpec ApplyFilterBands(const MelSpec &spec, const FilterBands &bands) {
  MelSpec out = spec;
  const Eigen::Index n_bins = spec.num_bins();
  const bool linear = spec.domain == SpecDomain::kLinearMagnitude;
  for (std::size_t b = 0; b < bands.starts.size(); ++b) {
    Eigen::Index lo = bands.starts[b];
    Eigen::Index hi = b + 1 < bands.starts.size() ? bands.starts[b + 1] : n_bins;
    auto block = out.data.middleCols(lo, hi - lo);
    if (linear)
      block *= std::pow(10.0, bands.gains_db[b] / 20.0);
    else
      block.array() += bands.gains_db[b] * std::numbers::ln10 / 20.0;
  }
  return out;
}

MelSpec FilterAugment(const MelSpec &spec, const FilterAugmentConfig &cfg, Rng &rng) {
  if (spec.domain != SpecDomain::kLinearMagnitude)
    throw Error(ErrorKind::kDomainMismatch, "FilterAugment expects linear magnitudes");
  return ApplyFilterBands(spec, SampleFilterBands(spec.num_bins(), cfg, rng));
}

MelSpec FilterAugmentLog(const MelSpec &spec, const FilterAugmentConfig &cfg, Rng &rng) {
  if (spec.domain != SpecDomain::kLogMagnitude)
    throw Error(ErrorKind::kDomainMismatch, "FilterAugmentLog expects log magnitudes");
  return ApplyFilterBands(spec, SampleFilterBands(spec.num_bins(), cfg, rng));
}

// ---------------------------------------------------------------------------

MelSpec ApplyFreqMask(const MelSpec &spec, Eigen::Index start, Eigen::Index width) {
  MelSpec out = spec;
  if (width > 0) out.data.middleCols(start, width).setConstant(MaskValue(spec));
  return out;
}

MelSpec FreqMask(const MelSpec &spec, int max_bins, Rng &rng) {
  if (max_bins < 0 || max_bins > spec.num_bins())
    throw Error(ErrorKind::kInvalidConfig,
                "freq mask max_bins " + std::to_string(max_bins) + " outside [0, " +
                    std::to_string(spec.num_bins()) + "]");
  auto width = rng.UniformInt(0, max_bins);
  auto start = rng.UniformInt(0, spec.num_bins() - width);
  return ApplyFreqMask(spec, start, width);
}

namespace {

void CheckLabelFrames(const MelSpec &spec, const LabelSet &labels) {
  if (labels.num_frames() != spec.num_frames())
    throw Error(ErrorKind::kShapeMismatch,
                "labels span " + std::to_string(labels.num_frames()) + " frames, features " +
                    std::to_string(spec.num_frames()));
}

void RecomputeWeakIfHard(LabelSet &labels) {
  if (labels.IsHard()) labels.RecomputeWeak();
}

}  // namespace

std::pair<MelSpec, LabelSet> ApplyTimeMask(const MelSpec &spec, const LabelSet &labels,
                                           Eigen::Index start, Eigen::Index length) {
  CheckLabelFrames(spec, labels);
  MelSpec out = spec;
  LabelSet out_labels = labels;
  if (length > 0) {
    out.data.middleRows(start, length).setConstant(MaskValue(spec));
    out_labels.strong.middleCols(start, length).setZero();
    RecomputeWeakIfHard(out_labels);
  }
  return {std::move(out), std::move(out_labels)};
}

std::pair<MelSpec, LabelSet> TimeMask(const MelSpec &spec, const LabelSet &labels,
                                      const AugmentConfig &cfg, Rng &rng) {
  const Eigen::Index n_frames = spec.num_frames();
  Eigen::Index length = rng.UniformInt(cfg.time_mask_min_frames, cfg.time_mask_max_frames);
  length = std::min(length, n_frames);
  Eigen::Index start = rng.UniformInt(0, n_frames - length);
  return ApplyTimeMask(spec, labels, start, length);
}

std::pair<MelSpec, LabelSet> ApplyFrameShift(const MelSpec &spec, const LabelSet &labels,
                                             Eigen::Index shift) {
  CheckLabelFrames(spec, labels);
  const Eigen::Index n_frames = spec.num_frames();
  MelSpec out = spec;
  out.data.setConstant(MaskValue(spec));
  LabelSet out_labels = labels;
  out_labels.strong.setZero();
  const Eigen::Index kept = n_frames - std::abs(shift);
  if (kept > 0) {
    Eigen::Index src = shift >= 0 ? 0 : -shift;
    Eigen::Index dst = shift >= 0 ? shift : 0;
    out.data.middleRows(dst, kept) = spec.data.middleRows(src, kept);
    out_labels.strong.middleCols(dst, kept) = labels.strong.middleCols(src, kept);
  }
  RecomputeWeakIfHard(out_labels);
  return {std::move(out), std::move(out_labels)};
}

std::pair<MelSpec, LabelSet> FrameShift(const MelSpec &spec, const LabelSet &labels,
                                        int max_frames, Rng &rng) {
  if (max_frames < 0 || max_frames >= spec.num_frames())
    throw Error(ErrorKind::kInvalidConfig,
                "frameshift_max_frames must be in [0, " + std::to_string(spec.num_frames()) + ")");
  return ApplyFrameShift(spec, labels, rng.UniformInt(-max_frames, max_frames));
}

// ---------------------------------------------------------------------------

std::pair<MelSpec, LabelSet> ApplyMixup(const std::pair<MelSpec, LabelSet> &a,
                                        const std::pair<MelSpec, LabelSet> &b, double lambda) {
  const auto &[fa, la] = a;
  const auto &[fb, lb] = b;
  if (fa.data.rows() != fb.data.rows() || fa.data.cols() != fb.data.cols() ||
      la.strong.rows() != lb.strong.rows() || la.strong.cols() != lb.strong.cols() ||
      la.weak.size() != lb.weak.size())
    throw Error(ErrorKind::kShapeMismatch, "mixup inputs differ in shape");
  if (fa.domain != fb.domain)
    throw Error(ErrorKind::kDomainMismatch, "mixup inputs are in different domains");

  std::pair<MelSpec, LabelSet> out = a;
  out.first.data = lambda * fa.data + (1.0 - lambda) * fb.data;
  out.second.strong = lambda * la.strong + (1.0 - lambda) * lb.strong;
  out.second.weak = lambda * la.weak + (1.0 - lambda) * lb.weak;
  return out;
}

std::pair<MelSpec, LabelSet> Mixup(const std::pair<MelSpec, LabelSet> &a,
                                   const std::pair<MelSpec, LabelSet> &b,
                                   const AugmentConfig &cfg, Rng &rng) {
  if (rng.Uniform(0.0, 1.0) >= cfg.mixup_prob) {
    ApplyMixup(a, b, 1.0);  // shape check
    return a;
  }
  return ApplyMixup(a, b, rng.Beta(cfg.mixup_alpha, cfg.mixup_alpha));
}

// ---------------------------------------------------------------------------

double SampleSnrDb(std::pair<double, double> snr_db, Rng &rng) {
  if (!(snr_db.first <= snr_db.second))
    throw Error(ErrorKind::kInvalidConfig, "noise SNR range needs lo <= hi");
  return rng.Uniform(snr_db.first, snr_db.second);
}

MelSpec AddNoiseAtSnr(const MelSpec &spec, double snr_db, Rng &rng) {
  bool silent = spec.data.size() == 0;
  if (!silent) {
    if (spec.domain == SpecDomain::kLinearMagnitude)
      silent = spec.data.squaredNorm() == 0.0;
    else
      silent = spec.data.maxCoeff() <= std::log(spec.log_floor);
  }
  if (silent) throw Error(ErrorKind::kNoSignalPower, "spectrogram carries no signal");

  const double power = spec.data.squaredNorm() / static_cast<double>(spec.data.size());
  const double sigma = std::sqrt(power * std::pow(10.0, -snr_db / 10.0));
  MelSpec out = spec;
  double *p = out.data.data();
  for (Eigen::Index i = 0; i < out.data.size(); ++i) p[i] += rng.Normal(0.0, sigma);
  return out;
}

MelSpec AddGaussianNoise(const MelSpec &spec, std::pair<double, double> snr_db, Rng &rng) {
  double snr = SampleSnrDb(snr_db, rng);
  return AddNoiseAtSnr(spec, snr, rng);
}

// ---------------------------------------------------------------------------

MelSpec AugmentLabelPreserving(const MelSpec &spec, const AugmentConfig &cfg, Rng &rng) {
  MelSpec out = spec;
  if (cfg.filter_aug) {
    out = out.domain == SpecDomain::kLinearMagnitude ? FilterAugment(out, *cfg.filter_aug, rng)
                                                     : FilterAugmentLog(out, *cfg.filter_aug, rng);
  }
  if (cfg.freq_mask_enabled()) out = FreqMask(out, cfg.freq_mask_max_bins, rng);
  if (cfg.noise_snr_db) out = AddGaussianNoise(out, *cfg.noise_snr_db, rng);
  return out;
}

namespace {

enum Stage : std::uint64_t {
  kStagePermutation = 1,
  kStageFrameShift = 2,
  kStageMixup = 3,
  kStageTimeMask = 4,
  kStageStudent = 5,
  kStageTeacher = 6,
};

}  // namespace

Views MakeStudentTeacherViews(const std::vector<std::pair<MelSpec, LabelSet>> &batch,
                              const AugmentConfig &cfg, const Rng &rng) {
  if (batch.empty()) throw Error(ErrorKind::kShapeMismatch, "empty batch");
  cfg.Validate();
  const std::size_t n = batch.size();
  for (const auto &[spec, labels] : batch) CheckLabelFrames(spec, labels);

  std::vector<std::pair<MelSpec, LabelSet>> items = batch;
  if (cfg.frame_shift_enabled()) {
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng.Fork(kStageFrameShift).Fork(i);
      items[i] = FrameShift(items[i].first, items[i].second, cfg.frameshift_max_frames, r);
    }
  }

  if (cfg.mixup_enabled()) {
    std::vector<std::size_t> partner(n);
    for (std::size_t i = 0; i < n; ++i) partner[i] = i;
    Rng perm_rng = rng.Fork(kStagePermutation);
    for (std::size_t i = n; i > 1; --i) {
      auto j = static_cast<std::size_t>(perm_rng.UniformInt(0, static_cast<std::int64_t>(i) - 1));
      std::swap(partner[i - 1], partner[j]);
    }
    std::vector<std::pair<MelSpec, LabelSet>> mixed(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng.Fork(kStageMixup).Fork(i);
      mixed[i] = Mixup(items[i], items[partner[i]], cfg, r);
    }
    items = std::move(mixed);
  }

  if (cfg.time_mask_enabled()) {
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng.Fork(kStageTimeMask).Fork(i);
      items[i] = TimeMask(items[i].first, items[i].second, cfg, r);
    }
  }

  Views views;
  views.student.reserve(n);
  views.teacher.reserve(n);
  views.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng student_rng = rng.Fork(kStageStudent).Fork(i);
    Rng teacher_rng = rng.Fork(kStageTeacher).Fork(i);
    views.student.push_back(AugmentLabelPreserving(items[i].first, cfg, student_rng));
    views.teacher.push_back(AugmentLabelPreserving(items[i].first, cfg, teacher_rng));
    views.labels.push_back(std::move(items[i].second));
  }
  return views;
}

}  // namespace sedkit

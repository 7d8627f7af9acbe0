// include/sedkit/frontend.h

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

#ifndef SEDKIT_FRONTEND_H_
#define SEDKIT_FRONTEND_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "sedkit/matrix.h"

namespace sedkit {

struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;
};

struct FrontendConfig {
  int n_fft = 2048;
  int hop = 256;
  int n_mels = 128;
  int sample_rate = 16000;
  double log_floor = 1e-5;

  /// Throws Error(kInvalidConfig) when a field is out of range.
  void Validate() const;
};

enum class SpecDomain { kLinearMagnitude, kLogMagnitude };

std::string_view DomainName(SpecDomain domain);
SpecDomain ParseDomain(std::string_view name);

/// Time x mel-bin magnitudes plus the timing metadata needed to map frames
/// back to seconds.
struct MelSpec {
  Matrix data;  // T x M
  SpecDomain domain = SpecDomain::kLogMagnitude;
  double hop_seconds = 0.016;
  double clip_duration_seconds = 10.0;
  double log_floor = 1e-5;

  Eigen::Index num_frames() const { return data.rows(); }
  Eigen::Index num_bins() const { return data.cols(); }
};

/// Value written into masked or vacated cells: 0 for linear magnitudes,
/// ln(log_floor) for log magnitudes.
double MaskValue(const MelSpec &spec);

/// Scales samples so that max |x| = 1. All-zero input is returned unchanged.
Waveform NormalizeWaveform(const Waveform &w);

/// Number of centered frames for n_samples at the given hop.
std::int64_t FrameCount(std::int64_t n_samples, int hop);

double HzToMel(double hz);
double MelToHz(double mel);

/// HTK-scale triangular filters, n_mels x (n_fft/2 + 1), unnormalized.
/// Filter corners are snapped to FFT bins so each row peaks at exactly 1.
Matrix MelFilterbank(const FrontendConfig &cfg);

/// Frequency (Hz) of the FFT bin where each filterbank row peaks.
std::vector<double> MelPeakFrequencies(const FrontendConfig &cfg);

/// Natural-log mel magnitude spectrogram: Hann window, reflect-padded
/// centered frames, magnitudes clamped at cfg.log_floor.
MelSpec LogMel(const Waveform &w, const FrontendConfig &cfg);

/// Same framing as LogMel without the log; domain = kLinearMagnitude.
MelSpec LinearMel(const Waveform &w, const FrontendConfig &cfg);

MelSpec ToLinear(const MelSpec &spec);
MelSpec ToLog(const MelSpec &spec);

}  // namespace sedkit

#endif  // SEDKIT_FRONTEND_H_

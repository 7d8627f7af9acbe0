// src/frontend.cc

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

#include "sedkit/frontend.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "sedkit/error.h"

namespace sedkit {

void FrontendConfig::Validate() const {
  if (n_fft <= 0 || hop <= 0 || n_mels <= 0 || sample_rate <= 0)
    throw Error(ErrorKind::kInvalidConfig,
                "n_fft, hop, n_mels and sample_rate must be positive");
  if (hop > n_fft)
    throw Error(ErrorKind::kInvalidConfig, "hop must not exceed n_fft");
  if (n_mels >= n_fft / 2 + 1)
    throw Error(ErrorKind::kInvalidConfig, "n_mels must be below n_fft/2 + 1");
  if (!(log_floor > 0.0))
    throw Error(ErrorKind::kInvalidConfig, "log_floor must be positive");
}

std::string_view DomainName(SpecDomain domain) {
  return domain == SpecDomain::kLinearMagnitude ? "linear_magnitude"
                                                : "log_magnitude";
}

SpecDomain ParseDomain(std::string_view name) {
  if (name == "linear_magnitude") return SpecDomain::kLinearMagnitude;
  if (name == "log_magnitude") return SpecDomain::kLogMagnitude;
  throw Error(ErrorKind::kParseError, "unknown domain '" + std::string(name) + "'");
}

double MaskValue(const MelSpec &spec) {
  return spec.domain == SpecDomain::kLinearMagnitude ? 0.0
                                                     : std::log(spec.log_floor);
}

Waveform NormalizeWaveform(const Waveform &w) {
  double peak = 0.0;
  for (double x : w.samples) {
    if (!std::isfinite(x))
      throw Error(ErrorKind::kInvalidWaveform, "non-finite sample");
    peak = std::max(peak, std::abs(x));
  }
  Waveform out = w;
  if (peak == 0.0) return out;
  for (double &x : out.samples) x /= peak;
  return out;
}

std::int64_t FrameCount(std::int64_t n_samples, int hop) {
  return n_samples / hop + 1;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

// Corner FFT bins of every triangle: n_mels + 2 points, evenly spaced in mel
// between 0 Hz and Nyquist.
std::vector<int> FilterCorners(const FrontendConfig &cfg) {
  const double mel_max = HzToMel(cfg.sample_rate / 2.0);
  const int n_points = cfg.n_mels + 2;
  std::vector<int> corners(n_points);
  for (int i = 0; i < n_points; ++i) {
    double mel = mel_max * i / (n_points - 1);
    double hz = MelToHz(mel);
    corners[i] = static_cast<int>(std::lround(hz * cfg.n_fft / cfg.sample_rate));
  }
  return corners;
}

}  // namespace

Matrix MelFilterbank(const FrontendConfig &cfg) {
  cfg.Validate();
  const int n_freqs = cfg.n_fft / 2 + 1;
  std::vector<int> corners = FilterCorners(cfg);
  Matrix fb = Matrix::Zero(cfg.n_mels, n_freqs);
  for (int m = 0; m < cfg.n_mels; ++m) {
    int left = corners[m], center = corners[m + 1], right = corners[m + 2];
    if (!(left < center && center < right))
      throw Error(ErrorKind::kDegenerateFilterbank,
                  "mel row " + std::to_string(m) +
                      " collapses onto a single FFT bin; reduce n_mels or raise n_fft");
    for (int k = left; k <= center; ++k)
      fb(m, k) = static_cast<double>(k - left) / (center - left);
    for (int k = center; k <= right; ++k)
      fb(m, k) = static_cast<double>(right - k) / (right - center);
  }
  return fb;
}

std::vector<double> MelPeakFrequencies(const FrontendConfig &cfg) {
  std::vector<int> corners = FilterCorners(cfg);
  std::vector<double> peaks(cfg.n_mels);
  for (int m = 0; m < cfg.n_mels; ++m)
    peaks[m] = static_cast<double>(corners[m + 1]) * cfg.sample_rate / cfg.n_fft;
  return peaks;
}

namespace {

// FFTW's planner is not reentrant; execution on distinct buffers is.
std::mutex &PlannerMutex() {
  static std::mutex mu;
  return mu;
}

struct FftwDeleter {
  void operator()(void *p) const { fftwl_free(p); }
};

// Long double keeps rounding noise well below bins near the log floor.
class RealFft {
 public:
  explicit RealFft(int n)
      : n_(n),
        in_(static_cast<long double *>(fftwl_malloc(sizeof(long double) * n))),
        out_(static_cast<fftwl_complex *>(
            fftwl_malloc(sizeof(fftwl_complex) * (n / 2 + 1)))) {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan_ = fftwl_plan_dft_r2c_1d(n, in_.get(), reinterpret_cast<fftwl_complex *>(out_.get()),
                                  FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftwl_destroy_plan(plan_);
  }
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  long double *input() { return in_.get(); }

  // Magnitudes of the n/2 + 1 non-negative frequency bins.
  void Magnitudes(double *dst) {
    fftwl_execute(plan_);
    const auto *out = reinterpret_cast<const fftwl_complex *>(out_.get());
    for (int k = 0; k <= n_ / 2; ++k)
      dst[k] = static_cast<double>(std::hypot(out[k][0], out[k][1]));
  }

 private:
  int n_;
  std::unique_ptr<long double, FftwDeleter> in_;
  std::unique_ptr<void, FftwDeleter> out_;
  fftwl_plan plan_;
};

MelSpec ComputeMel(const Waveform &w, const FrontendConfig &cfg, bool take_log) {
  cfg.Validate();
  if (w.sample_rate != cfg.sample_rate)
    throw Error(ErrorKind::kSampleRateMismatch,
                "waveform is " + std::to_string(w.sample_rate) + " Hz, config expects " +
                    std::to_string(cfg.sample_rate) + " Hz");
  for (double x : w.samples)
    if (!std::isfinite(x)) throw Error(ErrorKind::kInvalidWaveform, "non-finite sample");

  const std::int64_t n = static_cast<std::int64_t>(w.samples.size());
  const int pad = cfg.n_fft / 2;
  if (n <= pad)
    throw Error(ErrorKind::kClipTooShort,
                std::to_string(n) + " samples cannot be reflect-padded by " +
                    std::to_string(pad));

  const Matrix fb = MelFilterbank(cfg);
  const int n_freqs = cfg.n_fft / 2 + 1;
  const std::int64_t n_frames = FrameCount(n, cfg.hop);

  std::vector<long double> window(cfg.n_fft);
  for (int i = 0; i < cfg.n_fft; ++i)
    window[i] = 0.5L - 0.5L * std::cos(2.0L * std::numbers::pi_v<long double> * i / cfg.n_fft);

  auto sample_at = [&](std::int64_t i) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
    return w.samples[i];
  };

  Matrix spectrum(n_frames, n_freqs);
  RealFft fft(cfg.n_fft);
  for (std::int64_t t = 0; t < n_frames; ++t) {
    const std::int64_t start = t * cfg.hop - pad;
    long double *in = fft.input();
    for (int i = 0; i < cfg.n_fft; ++i)
      in[i] = static_cast<long double>(sample_at(start + i)) * window[i];
    fft.Magnitudes(spectrum.row(t).data());
  }

  MelSpec spec;
  spec.data = spectrum * fb.transpose();
  spec.hop_seconds = static_cast<double>(cfg.hop) / cfg.sample_rate;
  spec.clip_duration_seconds = static_cast<double>(n) / cfg.sample_rate;
  spec.log_floor = cfg.log_floor;
  spec.domain = SpecDomain::kLinearMagnitude;
  if (take_log) {
    spec.data = spec.data.array().max(cfg.log_floor).log().matrix();
    spec.domain = SpecDomain::kLogMagnitude;
  }
  return spec;
}

}  // namespace

MelSpec LogMel(const Waveform &w, const FrontendConfig &cfg) {
  return ComputeMel(w, cfg, true);
}

MelSpec LinearMel(const Waveform &w, const FrontendConfig &cfg) {
  return ComputeMel(w, cfg, false);
}

MelSpec ToLinear(const MelSpec &spec) {
  if (spec.domain == SpecDomain::kLinearMagnitude) return spec;
  MelSpec out = spec;
  out.data = spec.data.array().exp().matrix();
  out.domain = SpecDomain::kLinearMagnitude;
  return out;
}

MelSpec ToLog(const MelSpec &spec) {
  if (spec.domain == SpecDomain::kLogMagnitude) return spec;
  MelSpec out = spec;
  out.data = spec.data.array().max(spec.log_floor).log().matrix();
  out.domain = SpecDomain::kLogMagnitude;
  return out;
}

}  // namespace sedkit

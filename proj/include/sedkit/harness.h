// include/sedkit/harness.h

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

#ifndef SEDKIT_HARNESS_H_
#define SEDKIT_HARNESS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sedkit/augment.h"
#include "sedkit/evaluate.h"
#include "sedkit/frontend.h"
#include "sedkit/postprocess.h"

namespace sedkit {

enum class PrototypeKind { kTone, kNoise };

/// A synthetic sound class: a steady tone or a band of noise.
struct EventPrototype {
  std::string name;
  PrototypeKind kind = PrototypeKind::kTone;
  double freq_hz = 1000.0;                     // kTone
  std::pair<double, double> band_hz{0.0, 0.0};  // kNoise
  std::pair<double, double> duration_s{1.0, 3.0};
};

struct SceneSpec {
  int n_clips = 10;
  double clip_seconds = 10.0;
  int sample_rate = 16000;
  std::vector<EventPrototype> classes;
  std::pair<int, int> events_per_clip{1, 3};
  /// Event RMS over background RMS, in dB.
  double background_snr_db = 20.0;
  /// Onsets and durations are multiples of this; the default equals the
  /// default frontend hop, so events land on frame boundaries.
  double time_quantum_s = 0.016;
  std::uint64_t seed = 0;

  void Validate() const;
  std::vector<std::string> class_names() const;
};

/// Four well-separated classes (two tones, one noise band, one low tone).
SceneSpec DefaultScene();

struct SynthClip {
  std::string clip_id;  // file name, e.g. "clip_0003.wav"
  std::vector<Event> events;
};

/// Draws event placements for every clip. Same-class events never overlap.
/// Throws PlacementFailure when the requested events cannot be fitted.
std::vector<SynthClip> PlanScenes(const SceneSpec &spec);

/// Background Gaussian noise plus every event with 10 ms raised-cosine edges.
Waveform RenderClip(const SceneSpec &spec, const SynthClip &clip, std::size_t clip_index);

GroundTruth GroundTruthOf(const SceneSpec &spec, const std::vector<SynthClip> &clips);

/// Writes <clip>.wav files plus gt.tsv, weak.tsv, durations.csv and
/// toy_config.json into dir.
void WriteDataset(const std::string &dir, const SceneSpec &spec,
                  const std::vector<SynthClip> &clips);

/// PlanScenes + WriteDataset.
std::vector<SynthClip> SynthDataset(const SceneSpec &spec, const std::string &dir);

// ---------------------------------------------------------------------------

enum class WeakPooling { kMax, kMean };

struct ToyClassTemplate {
  std::string name;
  int bin_lo = 0;  // inclusive
  int bin_hi = 0;  // exclusive
};

struct ToyDetectorConfig {
  std::vector<ToyClassTemplate> classes;
  double temperature = 2.0;
  /// Subtracted from the standardized energy before the logistic.
  double bias = 0.0;
  WeakPooling weak_pooling = WeakPooling::kMax;

  void Validate(Eigen::Index n_bins) const;
};

/// Mel-bin templates matching each prototype's frequency content.
ToyDetectorConfig ToyConfigForScene(const SceneSpec &spec, const FrontendConfig &frontend);

/// Frame score = logistic(temperature * (z - bias)), where z is the class's
/// template-band mean of the per-clip standardized log-mel: each bin has its
/// median over frames subtracted and the result is divided by the clip-wide
/// median absolute residual scaled by 1.4826 (a robust standard deviation).
ScoreMatrix ToyDetect(const MelSpec &spec, const ToyDetectorConfig &cfg,
                      const std::string &clip_id = "");

// ---------------------------------------------------------------------------

struct NamedPreset {
  std::string name;
  AugmentConfig config;
};

struct AblationRow {
  std::string method;
  double psds1 = 0.0;
  double psds2 = 0.0;
};

/// Stream used for clip i's augmentation during an ablation run.
Rng AblationRng(std::uint64_t seed, std::size_t clip_index);

/// For every preset: synthesize, featurize, augment (label-preserving stages),
/// detect, and evaluate both scenarios with the default decode settings.
std::vector<AblationRow> RunAblation(const std::vector<NamedPreset> &grid,
                                     const SceneSpec &scene);

std::string AblationCsv(const std::vector<AblationRow> &rows);

}  // namespace sedkit

#endif  // SEDKIT_HARNESS_H_

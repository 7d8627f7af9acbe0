// src/harness.cc

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

#include "sedkit/harness.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "sedkit/config.h"
#include "sedkit/error.h"
#include "sedkit/formats.h"
#include "sedkit/parallel.h"

namespace sedkit {

namespace {

constexpr double kEventRms = 0.1;
constexpr double kEdgeSeconds = 0.01;
constexpr double kNoiseComponentSpacingHz = 10.0;
constexpr int kPlacementAttempts = 200;
constexpr double kMadToSigma = 1.4826;

enum StreamTag : std::uint64_t { kTagPlan = 11, kTagRender = 12, kTagAblation = 13 };

}  // namespace

void SceneSpec::Validate() const {
  if (n_clips < 0) throw Error(ErrorKind::kInvalidConfig, "n_clips must be >= 0");
  if (!(clip_seconds > 0.0) || sample_rate <= 0)
    throw Error(ErrorKind::kInvalidConfig, "clip_seconds and sample_rate must be positive");
  if (classes.empty()) throw Error(ErrorKind::kInvalidConfig, "scene needs at least one class");
  if (events_per_clip.first < 0 || events_per_clip.first > events_per_clip.second)
    throw Error(ErrorKind::kInvalidConfig, "events_per_clip needs 0 <= min <= max");
  if (!(time_quantum_s > 0.0))
    throw Error(ErrorKind::kInvalidConfig, "time_quantum_s must be positive");
  std::set<std::string> names;
  for (const EventPrototype &p : classes) {
    if (p.name.empty() || !names.insert(p.name).second)
      throw Error(ErrorKind::kInvalidConfig, "class names must be unique and non-empty");
    if (!(p.duration_s.first > 0.0 && p.duration_s.first <= p.duration_s.second &&
          p.duration_s.second <= clip_seconds))
      throw Error(ErrorKind::kInvalidConfig,
                  "class '" + p.name + "': durations must satisfy 0 < min <= max <= clip_seconds");
    const double nyquist = sample_rate / 2.0;
    if (p.kind == PrototypeKind::kTone && !(p.freq_hz > 0.0 && p.freq_hz < nyquist))
      throw Error(ErrorKind::kInvalidConfig, "class '" + p.name + "': tone above Nyquist");
    if (p.kind == PrototypeKind::kNoise &&
        !(p.band_hz.first >= 0.0 && p.band_hz.first < p.band_hz.second &&
          p.band_hz.second <= nyquist))
      throw Error(ErrorKind::kInvalidConfig, "class '" + p.name + "': invalid noise band");
  }
}

std::vector<std::string> SceneSpec::class_names() const {
  std::vector<std::string> names;
  for (const EventPrototype &p : classes) names.push_back(p.name);
  return names;
}

SceneSpec DefaultScene() {
  SceneSpec spec;
  spec.classes = {
      {"alarm", PrototypeKind::kTone, 1000.0, {0.0, 0.0}, {1.0, 3.0}},
      {"beep", PrototypeKind::kTone, 2500.0, {0.0, 0.0}, {1.0, 3.0}},
      {"hiss", PrototypeKind::kNoise, 0.0, {4500.0, 6500.0}, {1.0, 3.0}},
      {"hum", PrototypeKind::kTone, 300.0, {0.0, 0.0}, {1.0, 3.0}},
  };
  return spec;
}

std::vector<SynthClip> PlanScenes(const SceneSpec &spec) {
  spec.Validate();
  const Rng base(spec.seed, 0);
  const double q = spec.time_quantum_s;
  const auto slots = static_cast<std::int64_t>(std::floor(spec.clip_seconds / q + 1e-9));

  std::vector<SynthClip> clips;
  for (int i = 0; i < spec.n_clips; ++i) {
    Rng rng = base.Fork(kTagPlan).Fork(static_cast<std::uint64_t>(i));
    char name[32];
    std::snprintf(name, sizeof(name), "clip_%04d.wav", i);
    SynthClip clip{name, {}};
    // Occupied slot ranges per class, to keep same-class events disjoint.
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> taken(spec.classes.size());

    const auto n_events = rng.UniformInt(spec.events_per_clip.first, spec.events_per_clip.second);
    for (std::int64_t e = 0; e < n_events; ++e) {
      const auto c = static_cast<std::size_t>(
          rng.UniformInt(0, static_cast<std::int64_t>(spec.classes.size()) - 1));
      const EventPrototype &proto = spec.classes[c];
      auto length = static_cast<std::int64_t>(
          std::llround(rng.Uniform(proto.duration_s.first, proto.duration_s.second) / q));
      length = std::clamp<std::int64_t>(length, 1, slots);
      bool placed = false;
      for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
        const std::int64_t start = rng.UniformInt(0, slots - length);
        const std::int64_t stop = start + length;
        bool clash = false;
        for (const auto &[lo, hi] : taken[c]) clash = clash || (start < hi && lo < stop);
        if (clash) continue;
        taken[c].emplace_back(start, stop);
        clip.events.push_back({proto.name, start * q, stop * q});
        placed = true;
      }
      if (!placed)
        throw Error(ErrorKind::kPlacementFailure,
                    std::string(name) + ": cannot fit another '" + proto.name + "' event");
    }
    std::sort(clip.events.begin(), clip.events.end(), [](const Event &a, const Event &b) {
      return std::tie(a.onset, a.class_name) < std::tie(b.onset, b.class_name);
    });
    clips.push_back(std::move(clip));
  }
  return clips;
}

Waveform RenderClip(const SceneSpec &spec, const SynthClip &clip, std::size_t clip_index) {
  Rng rng = Rng(spec.seed, 0).Fork(kTagRender).Fork(clip_index);
  const auto n = static_cast<std::size_t>(std::llround(spec.clip_seconds * spec.sample_rate));
  const double sr = spec.sample_rate;
  Waveform w;
  w.sample_rate = spec.sample_rate;
  w.samples.resize(n);
  const double background_sigma = kEventRms * std::pow(10.0, -spec.background_snr_db / 20.0);
  for (double &x : w.samples) x = rng.Normal(0.0, background_sigma);

  for (const Event &e : clip.events) {
    auto proto = std::find_if(spec.classes.begin(), spec.classes.end(),
                              [&](const EventPrototype &p) { return p.name == e.class_name; });
    if (proto == spec.classes.end())
      throw Error(ErrorKind::kUnknownClass, "event class '" + e.class_name + "'");

    // Sinusoidal components (frequency, amplitude, phase) making up the event.
    std::vector<std::array<double, 3>> parts;
    if (proto->kind == PrototypeKind::kTone) {
      parts.push_back({proto->freq_hz, kEventRms * std::numbers::sqrt2, 0.0});
    } else {
      const auto [lo, hi] = proto->band_hz;
      const int k = std::max(1, static_cast<int>((hi - lo) / kNoiseComponentSpacingHz));
      const double amplitude = kEventRms * std::sqrt(2.0 / k);
      for (int i = 0; i < k; ++i)
        parts.push_back({lo + (i + 0.5) * (hi - lo) / k, amplitude,
                         rng.Uniform(0.0, 2.0 * std::numbers::pi)});
    }

    const auto start = static_cast<std::size_t>(std::llround(e.onset * sr));
    const auto stop = std::min(n, static_cast<std::size_t>(std::llround(e.offset * sr)));
    if (stop <= start) continue;
    const std::size_t len = stop - start;
    const std::size_t ramp = std::min<std::size_t>(static_cast<std::size_t>(kEdgeSeconds * sr), len / 2);
    for (std::size_t i = 0; i < len; ++i) {
      double gain = 1.0;
      const std::size_t from_edge = std::min(i, len - 1 - i);
      if (from_edge < ramp)
        gain = 0.5 - 0.5 * std::cos(std::numbers::pi * (from_edge + 0.5) / ramp);
      double v = 0.0;
      const double t = i / sr;
      for (const auto &[f, a, phase] : parts) v += a * std::sin(2.0 * std::numbers::pi * f * t + phase);
      w.samples[start + i] += gain * v;
    }
  }
  return w;
}

GroundTruth GroundTruthOf(const SceneSpec &spec, const std::vector<SynthClip> &clips) {
  GroundTruth gt;
  gt.class_names = spec.class_names();
  for (const SynthClip &clip : clips) {
    gt.clip_durations[clip.clip_id] = spec.clip_seconds;
    for (const Event &e : clip.events) gt.events.emplace_back(clip.clip_id, e);
  }
  return gt;
}

void WriteDataset(const std::string &dir, const SceneSpec &spec,
                  const std::vector<SynthClip> &clips) {
  const fs::path root(dir);
  fs::create_directories(root);
  ParallelFor(clips.size(), [&](std::size_t i) {
    WriteWav(root / clips[i].clip_id, RenderClip(spec, clips[i], i));
  });

  DetectionSet gt_events;
  std::string weak = "filename\tevent_labels\n";
  std::map<std::string, double> durations;
  for (const SynthClip &clip : clips) {
    if (!clip.events.empty()) gt_events[clip.clip_id] = clip.events;
    durations[clip.clip_id] = spec.clip_seconds;
    std::string labels;
    for (const EventPrototype &p : spec.classes) {
      bool present = std::any_of(clip.events.begin(), clip.events.end(),
                                 [&](const Event &e) { return e.class_name == p.name; });
      if (!present) continue;
      if (!labels.empty()) labels += ',';
      labels += p.name;
    }
    weak += clip.clip_id + "\t" + labels + "\n";
  }
  WriteEventsTsv(root / "gt.tsv", gt_events);
  WriteFileAtomic(root / "weak.tsv", weak);
  WriteFileAtomic(root / "durations.csv", DurationsCsv(durations));

  FrontendConfig frontend;
  frontend.sample_rate = spec.sample_rate;
  WriteFileAtomic(root / "toy_config.json", ToJson(ToyConfigForScene(spec, frontend)).dump(2) + "\n");
}

std::vector<SynthClip> SynthDataset(const SceneSpec &spec, const std::string &dir) {
  auto clips = PlanScenes(spec);
  WriteDataset(dir, spec, clips);
  return clips;
}

// ---------------------------------------------------------------------------

void ToyDetectorConfig::Validate(Eigen::Index n_bins) const {
  if (classes.empty()) throw Error(ErrorKind::kInvalidConfig, "toy detector has no classes");
  if (!(temperature >= 0.0)) throw Error(ErrorKind::kInvalidConfig, "temperature must be >= 0");
  for (const ToyClassTemplate &t : classes)
    if (t.bin_lo < 0 || t.bin_lo >= t.bin_hi || t.bin_hi > n_bins)
      throw Error(ErrorKind::kInvalidConfig,
                  "class '" + t.name + "': template bins [" + std::to_string(t.bin_lo) + ", " +
                      std::to_string(t.bin_hi) + ") empty or outside [0, " +
                      std::to_string(n_bins) + ")");
}

ToyDetectorConfig ToyConfigForScene(const SceneSpec &spec, const FrontendConfig &frontend) {
  const std::vector<double> peaks = MelPeakFrequencies(frontend);
  const int n_bins = static_cast<int>(peaks.size());
  auto nearest = [&](double hz) {
    int best = 0;
    for (int m = 1; m < n_bins; ++m)
      if (std::abs(peaks[m] - hz) < std::abs(peaks[best] - hz)) best = m;
    return best;
  };

  ToyDetectorConfig cfg;
  cfg.temperature = 2.0;
  cfg.bias = 2.0;
  for (const EventPrototype &p : spec.classes) {
    ToyClassTemplate t{p.name, 0, 0};
    if (p.kind == PrototypeKind::kTone) {
      int m = nearest(p.freq_hz);
      t.bin_lo = std::max(0, m - 1);
      t.bin_hi = std::min(n_bins, m + 2);
    } else {
      t.bin_lo = nearest(p.band_hz.first);
      t.bin_hi = nearest(p.band_hz.second) + 1;
    }
    cfg.classes.push_back(t);
  }
  return cfg;
}

ScoreMatrix ToyDetect(const MelSpec &spec, const ToyDetectorConfig &cfg,
                      const std::string &clip_id) {
  cfg.Validate(spec.num_bins());
  const Matrix x = ToLog(spec).data;
  const Eigen::Index n_frames = x.rows();

  Matrix residual = x;
  std::vector<double> column(static_cast<std::size_t>(n_frames));
  for (Eigen::Index m = 0; m < x.cols(); ++m) {
    for (Eigen::Index t = 0; t < n_frames; ++t) column[t] = x(t, m);
    const std::size_t hi = column.size() / 2;
    std::nth_element(column.begin(), column.begin() + hi, column.end());
    double median = column[hi];
    if (column.size() % 2 == 0) {
      const double lower = *std::max_element(column.begin(), column.begin() + hi);
      median = 0.5 * (lower + median);
    }
    residual.col(m).array() -= median;
  }
  // Robust scale: floor-filled frames from masking or shifting leave it intact.
  std::vector<double> deviations(residual.data(), residual.data() + residual.size());
  for (double &d : deviations) d = std::abs(d);
  double spread = 0.0;
  if (!deviations.empty()) {
    auto mid = deviations.begin() + static_cast<std::ptrdiff_t>(deviations.size() / 2);
    std::nth_element(deviations.begin(), mid, deviations.end());
    spread = kMadToSigma * *mid;
  }
  if (spread > 0.0) residual /= spread;
  else residual.setZero();

  ScoreMatrix out;
  out.clip_id = clip_id;
  out.hop_seconds = spec.hop_seconds;
  out.clip_duration_seconds = spec.clip_duration_seconds;
  const auto n_classes = static_cast<Eigen::Index>(cfg.classes.size());
  out.strong.resize(n_frames, n_classes);
  out.weak.resize(n_classes);
  for (Eigen::Index c = 0; c < n_classes; ++c) {
    const ToyClassTemplate &t = cfg.classes[c];
    out.class_names.push_back(t.name);
    for (Eigen::Index f = 0; f < n_frames; ++f) {
      const double z = residual.row(f).segment(t.bin_lo, t.bin_hi - t.bin_lo).mean();
      out.strong(f, c) = 1.0 / (1.0 + std::exp(-cfg.temperature * (z - cfg.bias)));
    }
    if (n_frames == 0)
      out.weak[c] = 0.5;
    else if (cfg.weak_pooling == WeakPooling::kMax)
      out.weak[c] = out.strong.col(c).maxCoeff();
    else
      out.weak[c] = out.strong.col(c).mean();
  }
  return out;
}

// ---------------------------------------------------------------------------

Rng AblationRng(std::uint64_t seed, std::size_t clip_index) {
  return Rng(seed, 0).Fork(kTagAblation).Fork(clip_index);
}

std::vector<AblationRow> RunAblation(const std::vector<NamedPreset> &grid,
                                     const SceneSpec &scene) {
  for (const NamedPreset &p : grid) p.config.Validate();
  const std::vector<SynthClip> clips = PlanScenes(scene);
  FrontendConfig frontend;
  frontend.sample_rate = scene.sample_rate;
  const ToyDetectorConfig toy = ToyConfigForScene(scene, frontend);
  const GroundTruth gt = GroundTruthOf(scene, clips);

  std::vector<MelSpec> features(clips.size());
  ParallelFor(clips.size(), [&](std::size_t i) {
    features[i] = LogMel(NormalizeWaveform(RenderClip(scene, clips[i], i)), frontend);
  });

  std::vector<AblationRow> rows;
  for (const NamedPreset &preset : grid) {
    std::vector<ScoreMatrix> scores(clips.size());
    ParallelFor(clips.size(), [&](std::size_t i) {
      Rng rng = AblationRng(scene.seed, i);
      scores[i] = ToyDetect(AugmentLabelPreserving(features[i], preset.config, rng), toy,
                            clips[i].clip_id);
    });
    const DecodeConfig decode;
    const auto thresholds = DefaultThresholds();
    AblationRow row;
    row.method = preset.name;
    row.psds1 = EvaluateSystem(scores, gt, Scenario1(), decode, thresholds).roc.psds;
    row.psds2 = EvaluateSystem(scores, gt, Scenario2(), decode, thresholds).roc.psds;
    rows.push_back(row);
  }
  return rows;
}

std::string AblationCsv(const std::vector<AblationRow> &rows) {
  std::string out = "method,psds1,psds2\n";
  for (const AblationRow &r : rows)
    out += r.method + "," + FormatDouble(r.psds1) + "," + FormatDouble(r.psds2) + "\n";
  return out;
}

}  // namespace sedkit

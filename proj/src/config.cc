// src/config.cc

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

#include "sedkit/config.h"

#include <algorithm>
#include <initializer_list>
#include <set>
#include <string>

#include "sedkit/error.h"

namespace sedkit {

namespace {

void RejectUnknownKeys(const Json &j, std::initializer_list<const char *> allowed,
                       const std::string &what) {
  if (!j.is_object()) throw Error(ErrorKind::kInvalidConfig, what + " must be a JSON object");
  std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto &item : j.items())
    if (!keys.count(item.key()))
      throw Error(ErrorKind::kInvalidConfig, what + ": unknown field '" + item.key() + "'");
}

template <typename T>
void Read(const Json &j, const char *key, T &out, const std::string &what) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kInvalidConfig, what + "." + key + ": " + e.what());
  }
}

std::pair<double, double> ReadPair(const Json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::kInvalidConfig, what + " must be a [lo, hi] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json ToJson(const AugmentConfig &cfg) {
  Json j;
  if (cfg.filter_aug) {
    j["filter_aug"] = {{"db_min", cfg.filter_aug->db_min},
                       {"db_max", cfg.filter_aug->db_max},
                       {"band_min", cfg.filter_aug->band_min},
                       {"band_max", cfg.filter_aug->band_max}};
  } else {
    j["filter_aug"] = nullptr;
  }
  j["freq_mask_max_bins"] = cfg.freq_mask_max_bins;
  j["time_mask_min_frames"] = cfg.time_mask_min_frames;
  j["time_mask_max_frames"] = cfg.time_mask_max_frames;
  j["frameshift_max_frames"] = cfg.frameshift_max_frames;
  j["mixup_prob"] = cfg.mixup_prob;
  j["mixup_alpha"] = cfg.mixup_alpha;
  if (cfg.noise_snr_db)
    j["noise_snr_db"] = {cfg.noise_snr_db->first, cfg.noise_snr_db->second};
  else
    j["noise_snr_db"] = nullptr;
  return j;
}

AugmentConfig AugmentConfigFromJson(const Json &j) {
  const std::string what = "augment config";
  RejectUnknownKeys(j,
                    {"filter_aug", "freq_mask_max_bins", "time_mask_min_frames",
                     "time_mask_max_frames", "frameshift_max_frames", "mixup_prob",
                     "mixup_alpha", "noise_snr_db"},
                    what);
  AugmentConfig cfg;
  if (auto it = j.find("filter_aug"); it != j.end() && !it->is_null()) {
    RejectUnknownKeys(*it, {"db_min", "db_max", "band_min", "band_max"}, "filter_aug");
    FilterAugmentConfig fa;
    Read(*it, "db_min", fa.db_min, "filter_aug");
    Read(*it, "db_max", fa.db_max, "filter_aug");
    Read(*it, "band_min", fa.band_min, "filter_aug");
    Read(*it, "band_max", fa.band_max, "filter_aug");
    cfg.filter_aug = fa;
  }
  Read(j, "freq_mask_max_bins", cfg.freq_mask_max_bins, what);
  Read(j, "time_mask_min_frames", cfg.time_mask_min_frames, what);
  Read(j, "time_mask_max_frames", cfg.time_mask_max_frames, what);
  Read(j, "frameshift_max_frames", cfg.frameshift_max_frames, what);
  Read(j, "mixup_prob", cfg.mixup_prob, what);
  Read(j, "mixup_alpha", cfg.mixup_alpha, what);
  if (auto it = j.find("noise_snr_db"); it != j.end() && !it->is_null())
    cfg.noise_snr_db = ReadPair(*it, "noise_snr_db");
  cfg.Validate();
  return cfg;
}

Json ToJson(const ScenarioConfig &sc) {
  Json j;
  j["rho_dtc"] = sc.rho_dtc;
  j["rho_gtc"] = sc.rho_gtc;
  if (sc.rho_cttc)
    j["rho_cttc"] = *sc.rho_cttc;
  else
    j["rho_cttc"] = nullptr;
  j["alpha_ct"] = sc.alpha_ct;
  j["alpha_st"] = sc.alpha_st;
  j["e_max"] = sc.e_max;
  return j;
}

ScenarioConfig ScenarioConfigFromJson(const Json &j) {
  const std::string what = "scenario";
  RejectUnknownKeys(j, {"rho_dtc", "rho_gtc", "rho_cttc", "alpha_ct", "alpha_st", "e_max"}, what);
  ScenarioConfig sc;
  Read(j, "rho_dtc", sc.rho_dtc, what);
  Read(j, "rho_gtc", sc.rho_gtc, what);
  if (auto it = j.find("rho_cttc"); it != j.end() && !it->is_null()) {
    double v = 0.0;
    Read(j, "rho_cttc", v, what);
    sc.rho_cttc = v;
  }
  Read(j, "alpha_ct", sc.alpha_ct, what);
  Read(j, "alpha_st", sc.alpha_st, what);
  Read(j, "e_max", sc.e_max, what);
  sc.Validate();
  return sc;
}

Json ToJson(const SceneSpec &spec) {
  Json classes = Json::array();
  for (const EventPrototype &p : spec.classes) {
    Json c;
    c["name"] = p.name;
    if (p.kind == PrototypeKind::kTone) {
      c["kind"] = "tone";
      c["freq_hz"] = p.freq_hz;
    } else {
      c["kind"] = "noise";
      c["band_hz"] = {p.band_hz.first, p.band_hz.second};
    }
    c["duration_s"] = {p.duration_s.first, p.duration_s.second};
    classes.push_back(c);
  }
  Json j;
  j["n_clips"] = spec.n_clips;
  j["clip_seconds"] = spec.clip_seconds;
  j["sample_rate"] = spec.sample_rate;
  j["classes"] = classes;
  j["events_per_clip"] = {spec.events_per_clip.first, spec.events_per_clip.second};
  j["background_snr_db"] = spec.background_snr_db;
  j["time_quantum_s"] = spec.time_quantum_s;
  j["seed"] = spec.seed;
  return j;
}

SceneSpec SceneSpecFromJson(const Json &j) {
  const std::string what = "scene";
  RejectUnknownKeys(j,
                    {"n_clips", "clip_seconds", "sample_rate", "classes", "events_per_clip",
                     "background_snr_db", "time_quantum_s", "seed"},
                    what);
  SceneSpec spec = DefaultScene();
  Read(j, "n_clips", spec.n_clips, what);
  Read(j, "clip_seconds", spec.clip_seconds, what);
  Read(j, "sample_rate", spec.sample_rate, what);
  Read(j, "background_snr_db", spec.background_snr_db, what);
  Read(j, "time_quantum_s", spec.time_quantum_s, what);
  Read(j, "seed", spec.seed, what);
  if (auto it = j.find("events_per_clip"); it != j.end()) {
    auto [lo, hi] = ReadPair(*it, "events_per_clip");
    spec.events_per_clip = {static_cast<int>(lo), static_cast<int>(hi)};
  }
  if (auto it = j.find("classes"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorKind::kInvalidConfig, "scene.classes must be a list");
    spec.classes.clear();
    for (const Json &c : *it) {
      RejectUnknownKeys(c, {"name", "kind", "freq_hz", "band_hz", "duration_s"}, "scene class");
      EventPrototype p;
      Read(c, "name", p.name, "scene class");
      std::string kind = "tone";
      Read(c, "kind", kind, "scene class");
      if (kind == "tone") {
        p.kind = PrototypeKind::kTone;
        Read(c, "freq_hz", p.freq_hz, "scene class");
      } else if (kind == "noise") {
        p.kind = PrototypeKind::kNoise;
        if (!c.contains("band_hz"))
          throw Error(ErrorKind::kInvalidConfig, "noise class '" + p.name + "' needs band_hz");
        p.band_hz = ReadPair(c["band_hz"], "band_hz");
      } else {
        throw Error(ErrorKind::kInvalidConfig, "unknown prototype kind '" + kind + "'");
      }
      if (c.contains("duration_s")) p.duration_s = ReadPair(c["duration_s"], "duration_s");
      spec.classes.push_back(p);
    }
  }
  spec.Validate();
  return spec;
}

Json ToJson(const ToyDetectorConfig &cfg) {
  Json classes = Json::array();
  for (const ToyClassTemplate &t : cfg.classes)
    classes.push_back({{"name", t.name}, {"bins", {t.bin_lo, t.bin_hi}}});
  Json j;
  j["classes"] = classes;
  j["temperature"] = cfg.temperature;
  j["bias"] = cfg.bias;
  j["weak_pooling"] = cfg.weak_pooling == WeakPooling::kMax ? "max" : "mean";
  return j;
}

ToyDetectorConfig ToyDetectorConfigFromJson(const Json &j) {
  const std::string what = "toy detector config";
  RejectUnknownKeys(j, {"classes", "temperature", "bias", "weak_pooling"}, what);
  ToyDetectorConfig cfg;
  Read(j, "temperature", cfg.temperature, what);
  Read(j, "bias", cfg.bias, what);
  std::string pooling = "max";
  Read(j, "weak_pooling", pooling, what);
  if (pooling == "max")
    cfg.weak_pooling = WeakPooling::kMax;
  else if (pooling == "mean")
    cfg.weak_pooling = WeakPooling::kMean;
  else
    throw Error(ErrorKind::kInvalidConfig, "weak_pooling must be 'max' or 'mean'");
  if (!j.contains("classes") || !j["classes"].is_array())
    throw Error(ErrorKind::kInvalidConfig, "toy detector config needs a classes list");
  for (const Json &c : j["classes"]) {
    RejectUnknownKeys(c, {"name", "bins"}, "toy class");
    ToyClassTemplate t;
    Read(c, "name", t.name, "toy class");
    if (!c.contains("bins")) throw Error(ErrorKind::kInvalidConfig, "toy class needs bins");
    auto [lo, hi] = ReadPair(c["bins"], "bins");
    t.bin_lo = static_cast<int>(lo);
    t.bin_hi = static_cast<int>(hi);
    cfg.classes.push_back(t);
  }
  return cfg;
}

Json ToJson(const FrontendConfig &cfg) {
  return Json{{"n_fft", cfg.n_fft},
              {"hop", cfg.hop},
              {"n_mels", cfg.n_mels},
              {"sample_rate", cfg.sample_rate},
              {"log_floor", cfg.log_floor}};
}

FrontendConfig FrontendConfigFromJson(const Json &j) {
  const std::string what = "frontend config";
  RejectUnknownKeys(j, {"n_fft", "hop", "n_mels", "sample_rate", "log_floor"}, what);
  FrontendConfig cfg;
  Read(j, "n_fft", cfg.n_fft, what);
  Read(j, "hop", cfg.hop, what);
  Read(j, "n_mels", cfg.n_mels, what);
  Read(j, "sample_rate", cfg.sample_rate, what);
  Read(j, "log_floor", cfg.log_floor, what);
  cfg.Validate();
  return cfg;
}

// ---------------------------------------------------------------------------

namespace {

// Shared label-altering setup: time masking 7-30 frames, frame shift up to
// 54 frames, mixup applied with probability 0.5.
AugmentConfig LabelAltering() {
  AugmentConfig cfg;
  cfg.time_mask_min_frames = 7;
  cfg.time_mask_max_frames = 30;
  cfg.frameshift_max_frames = 54;
  cfg.mixup_prob = 0.5;
  cfg.mixup_alpha = 0.2;
  return cfg;
}

AugmentConfig Noise(double lo, double hi) {
  AugmentConfig cfg = LabelAltering();
  cfg.noise_snr_db = std::make_pair(lo, hi);
  return cfg;
}

AugmentConfig FreqMaskOnly(int max_bins) {
  AugmentConfig cfg = LabelAltering();
  cfg.freq_mask_max_bins = max_bins;
  return cfg;
}

AugmentConfig FilterAug(double db_min, double db_max, int band_min, int band_max,
                        int freq_mask = 0) {
  AugmentConfig cfg = LabelAltering();
  cfg.filter_aug = FilterAugmentConfig{db_min, db_max, band_min, band_max};
  cfg.freq_mask_max_bins = freq_mask;
  return cfg;
}

std::vector<NamedPreset> BuildAugmentationGrid() {
  return {
      {"noise_30_50", Noise(30, 50)},
      {"noise_30_45", Noise(30, 45)},
      {"noise_35_45", Noise(35, 45)},
      {"noise_35_40", Noise(35, 40)},
      {"freqmask_8", FreqMaskOnly(8)},
      {"freqmask_12", FreqMaskOnly(12)},
      {"freqmask_16", FreqMaskOnly(16)},
      {"freqmask_32", FreqMaskOnly(32)},
      {"filtaug_-6_4.5_b2-4", FilterAug(-6, 4.5, 2, 4)},
      {"filtaug_-6_6_b2-4", FilterAug(-6, 6, 2, 4)},
      {"filtaug_-7.5_6_b2-4", FilterAug(-7.5, 6, 2, 4)},
      {"filtaug_-7.5_6_b2-3", FilterAug(-7.5, 6, 2, 3)},
      {"freqmask_16+filtaug_-7.5_6_b2-4", FilterAug(-7.5, 6, 2, 4, 16)},
      {"freqmask_16+filtaug_-6_4.5_b2-4", FilterAug(-6, 4.5, 2, 4, 16)},
      {"freqmask_4+filtaug_-7.5_6_b2-4", FilterAug(-7.5, 6, 2, 4, 4)},
      {"freqmask_4+filtaug_-6_4.5_b2-4", FilterAug(-6, 4.5, 2, 4, 4)},
  };
}

std::vector<NamedPreset> BuildPresets() {
  std::vector<NamedPreset> presets;
  presets.push_back({"none", DisabledAugmentConfig()});
  for (auto &p : BuildAugmentationGrid()) presets.push_back(std::move(p));

  AugmentConfig label_altering = LabelAltering();
  presets.push_back({"label_altering", label_altering});

  AugmentConfig model1 = label_altering;
  model1.filter_aug = FilterAugmentConfig{-7.5, 6.0, 2, 4};
  presets.push_back({"model1", model1});

  AugmentConfig model2 = model1;
  model2.mixup_prob = 0.8;
  model2.filter_aug->band_max = 3;
  presets.push_back({"model2", model2});
  return presets;
}

}  // namespace

const std::vector<NamedPreset> &Presets() {
  static const std::vector<NamedPreset> presets = BuildPresets();
  return presets;
}

AugmentConfig FindPreset(const std::string &name) {
  for (const auto &p : Presets())
    if (p.name == name) return p.config;
  throw Error(ErrorKind::kInvalidConfig, "unknown preset '" + name + "'");
}

std::vector<NamedPreset> AugmentationGrid() { return BuildAugmentationGrid(); }

std::vector<NamedPreset> GridFromJson(const Json &j) {
  RejectUnknownKeys(j, {"presets"}, "grid");
  if (!j.contains("presets") || !j["presets"].is_array())
    throw Error(ErrorKind::kInvalidConfig, "grid needs a presets list");
  std::vector<NamedPreset> grid;
  for (const Json &entry : j["presets"]) {
    if (entry.is_string()) {
      std::string name = entry.get<std::string>();
      grid.push_back({name, FindPreset(name)});
    } else {
      RejectUnknownKeys(entry, {"name", "config"}, "grid entry");
      NamedPreset p;
      Read(entry, "name", p.name, "grid entry");
      if (!entry.contains("config"))
        throw Error(ErrorKind::kInvalidConfig, "grid entry '" + p.name + "' needs a config");
      p.config = AugmentConfigFromJson(entry["config"]);
      grid.push_back(std::move(p));
    }
  }
  return grid;
}

}  // namespace sedkit

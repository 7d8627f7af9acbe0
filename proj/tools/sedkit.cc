// tools/sedkit.cc

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

// sedkit command-line tool: synth, featurize, augment, detect, decode,
// weak-sed, eval-psds, eval-f1, ablate.
//
// Exit codes: 0 success, 2 usage error, 3 invalid input data, 4 config error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sedkit/augment.h"
#include "sedkit/config.h"
#include "sedkit/error.h"
#include "sedkit/evaluate.h"
#include "sedkit/formats.h"
#include "sedkit/frontend.h"
#include "sedkit/harness.h"
#include "sedkit/parallel.h"
#include "sedkit/postprocess.h"
#include "sedkit/version.h"

namespace {

using namespace sedkit;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitConfig = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json LoadConfigJson(const std::string &path) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const Error &e) {
    throw Error(ErrorKind::kInvalidConfig, e.what());
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kInvalidConfig, path + ": " + e.what());
  }
}

std::string SlashFree(std::string path) {
  while (path.size() > 1 && path.back() == '/') path.pop_back();
  return path;
}

/// Run record written next to the primary output as <out>.manifest.json.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv)
      : command_(std::move(command)), argv_(std::move(argv)),
        start_(std::chrono::steady_clock::now()) {}

  void Config(const std::string &path) { config_ = path; }
  void Seed(std::uint64_t seed) { seed_ = seed; }
  void Input(const std::string &path) { inputs_.push_back(path); }
  void Output(const std::string &path) { outputs_.push_back(path); }

  void Write() const {
    if (outputs_.empty()) return;
    Json j;
    j["command"] = command_;
    j["argv"] = argv_;
    j["config"] = config_ ? Json(*config_) : Json(nullptr);
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
    j["version"] = kVersion;
    j["threads"] = ThreadCount();
    j["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    WriteFileAtomic(SlashFree(outputs_.front()) + ".manifest.json", j.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::optional<std::string> config_;
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> inputs_, outputs_;
  std::chrono::steady_clock::time_point start_;
};

SceneSpec LoadScene(const std::string &path, const std::optional<std::uint64_t> &seed) {
  Json j = LoadConfigJson(path);
  if (seed) j["seed"] = *seed;
  if (!j.is_object() || !j.contains("seed"))
    throw UsageError("scene has no seed; pass --seed or set \"seed\" in " + path);
  return SceneSpecFromJson(j);
}

std::vector<ScoreMatrix> LoadScores(const std::string &dir) {
  std::vector<ScoreMatrix> scores = ReadScoreDir(dir);
  if (scores.empty()) throw Error(ErrorKind::kIoError, "no score files in " + dir);
  return scores;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string scene, out;
  std::optional<std::uint64_t> seed;
};

void RunSynth(const SynthArgs &a, Manifest &m) {
  SceneSpec spec = LoadScene(a.scene, a.seed);
  m.Config(a.scene);
  m.Seed(spec.seed);
  m.Output(a.out);
  SynthDataset(spec, a.out);
}

struct FeaturizeArgs {
  std::string in, out, frontend;
  bool no_normalize = false;
};

void RunFeaturize(const FeaturizeArgs &a, Manifest &m) {
  FrontendConfig cfg;
  if (!a.frontend.empty()) {
    cfg = FrontendConfigFromJson(LoadConfigJson(a.frontend));
    m.Config(a.frontend);
  }
  cfg.Validate();
  m.Input(a.in);
  m.Output(a.out);
  const std::vector<fs::path> wavs = ListFiles(a.in, ".wav");
  fs::create_directories(a.out);
  ParallelFor(wavs.size(), [&](std::size_t i) {
    Waveform w = ReadWav(wavs[i]);
    if (!a.no_normalize) w = NormalizeWaveform(w);
    WriteMelSpec(a.out, wavs[i].stem().string(), LogMel(w, cfg));
  });
}

struct AugmentArgs {
  std::string preset, config, in, out, gt, views = "student,teacher";
  std::uint64_t seed = 0;
};

void RunAugment(const AugmentArgs &a, Manifest &m) {
  AugmentConfig cfg;
  if (!a.config.empty()) {
    cfg = AugmentConfigFromJson(LoadConfigJson(a.config));
    m.Config(a.config);
  } else {
    cfg = FindPreset(a.preset);
    m.Config("preset:" + a.preset);
  }
  cfg.Validate();
  bool want_student = false, want_teacher = false;
  for (const std::string &v : CLI::detail::split(a.views, ',')) {
    if (v == "student") want_student = true;
    else if (v == "teacher") want_teacher = true;
    else throw UsageError("--views accepts 'student' and 'teacher', got '" + v + "'");
  }
  m.Seed(a.seed);
  m.Input(a.in);
  m.Output(a.out);

  const std::vector<fs::path> files = ListFiles(a.in, ".csv");
  std::optional<DetectionSet> gt_events;
  std::vector<std::string> class_names;
  if (!a.gt.empty()) {
    m.Input(a.gt);
    gt_events = ReadEventsTsv(a.gt);
    std::set<std::string> names;
    for (const auto &[clip, events] : *gt_events)
      for (const Event &e : events) names.insert(e.class_name);
    class_names.assign(names.begin(), names.end());
  }

  std::vector<std::pair<MelSpec, LabelSet>> batch(files.size());
  std::vector<std::string> clip_ids(files.size());
  ParallelFor(files.size(), [&](std::size_t i) {
    MelSpec spec = ReadMelSpec(files[i]);
    clip_ids[i] = files[i].stem().string() + ".wav";
    LabelSet labels = EmptyLabels(spec.num_frames());
    if (gt_events) {
      auto it = gt_events->find(clip_ids[i]);
      const std::vector<Event> none;
      labels = LabelsFromEvents(it == gt_events->end() ? none : it->second, spec.num_frames(),
                                spec.hop_seconds, class_names);
    }
    batch[i] = {std::move(spec), std::move(labels)};
  });
  if (batch.empty()) throw Error(ErrorKind::kIoError, "no feature files in " + a.in);

  const Views views = MakeStudentTeacherViews(batch, cfg, Rng(a.seed, 0));
  const fs::path out(a.out);
  ParallelFor(files.size(), [&](std::size_t i) {
    const std::string stem = files[i].stem().string();
    if (want_student) WriteMelSpec(out / "student", stem, views.student[i]);
    if (want_teacher) WriteMelSpec(out / "teacher", stem, views.teacher[i]);
    if (gt_events)
      WriteLabels(out / "labels", clip_ids[i], views.labels[i], batch[i].first.hop_seconds);
  });
}

struct DetectArgs {
  std::string features, toy_config, out;
};

void RunDetect(const DetectArgs &a, Manifest &m) {
  const ToyDetectorConfig cfg = ToyDetectorConfigFromJson(LoadConfigJson(a.toy_config));
  m.Config(a.toy_config);
  m.Input(a.features);
  m.Output(a.out);
  const std::vector<fs::path> files = ListFiles(a.features, ".csv");
  fs::create_directories(a.out);
  ParallelFor(files.size(), [&](std::size_t i) {
    const MelSpec spec = ReadMelSpec(files[i]);
    WriteScores(a.out, ToyDetect(spec, cfg, files[i].stem().string() + ".wav"));
  });
}

struct DecodeArgs {
  std::string scores, out;
  std::vector<double> threshold{0.5};
  int median = 7;
  bool weak_mask = true;
};

void RunDecode(const DecodeArgs &a, bool weak_sed, Manifest &m) {
  DecodeConfig cfg;
  cfg.threshold = a.threshold;
  cfg.median_len = a.median;
  cfg.weak_masking = a.weak_mask;
  cfg.weak_sed = weak_sed;
  cfg.Validate();
  m.Input(a.scores);
  m.Output(a.out);
  WriteEventsTsv(a.out, DecodeAll(LoadScores(a.scores), cfg));
}

struct EvalPsdsArgs {
  std::string scores, gt, durations, scenario = "1", out, plot;
  int median = 7;
  int threshold_count = 50;
  bool no_weak_mask = false;
  bool weak_sed = false;
};

void RunEvalPsds(const EvalPsdsArgs &a, Manifest &m) {
  ScenarioConfig sc;
  if (a.scenario == "1") {
    sc = Scenario1();
  } else if (a.scenario == "2") {
    sc = Scenario2();
  } else {
    sc = ScenarioConfigFromJson(LoadConfigJson(a.scenario));
    m.Config(a.scenario);
  }
  sc.Validate();
  DecodeConfig decode;
  decode.median_len = a.median;
  decode.weak_masking = !a.no_weak_mask;
  decode.weak_sed = a.weak_sed;
  decode.Validate();
  if (a.threshold_count < 1) throw Error(ErrorKind::kInvalidConfig, "--thresholds must be >= 1");

  m.Input(a.scores);
  m.Input(a.gt);
  m.Input(a.durations);
  m.Output(a.out);
  const std::vector<ScoreMatrix> scores = LoadScores(a.scores);
  const GroundTruth gt = ReadGroundTruth(a.gt, a.durations, scores.front().class_names);
  const PsdsReport report =
      EvaluateSystem(scores, gt, sc, decode, DefaultThresholds(a.threshold_count));
  WriteFileAtomic(a.out, ReportToJson(report).dump(2) + "\n");
  if (!a.plot.empty()) {
    m.Output(a.plot);
    WriteFileAtomic(a.plot, PsdRocSvg(report));
  }
}

struct EvalF1Args {
  std::string events, gt, out;
  double onset_collar = 0.2;
  double offset_ratio = 0.2;
};

void RunEvalF1(const EvalF1Args &a, Manifest &m) {
  if (!(a.onset_collar >= 0.0) || !(a.offset_ratio >= 0.0))
    throw Error(ErrorKind::kInvalidConfig, "collars must be >= 0");
  m.Input(a.events);
  m.Input(a.gt);
  m.Output(a.out);
  GroundTruth gt;
  std::set<std::string> names;
  for (const auto &[clip, events] : ReadEventsTsv(a.gt))
    for (const Event &e : events) {
      gt.events.emplace_back(clip, e);
      names.insert(e.class_name);
    }
  gt.class_names.assign(names.begin(), names.end());
  const F1Report report = EventF1(ReadEventsTsv(a.events), gt, a.onset_collar, a.offset_ratio);
  WriteFileAtomic(a.out, F1ToJson(report, a.onset_collar, a.offset_ratio).dump(2) + "\n");
}

struct AblateArgs {
  std::string grid, scene, out;
  std::optional<std::uint64_t> seed;
};

void RunAblate(const AblateArgs &a, Manifest &m) {
  const std::vector<NamedPreset> grid = GridFromJson(LoadConfigJson(a.grid));
  const SceneSpec scene = LoadScene(a.scene, a.seed);
  m.Config(a.grid);
  m.Input(a.scene);
  m.Seed(scene.seed);
  m.Output(a.out);
  WriteFileAtomic(a.out, AblationCsv(RunAblation(grid, scene)));
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"sedkit: sound event detection toolkit"};
  app.set_version_flag("--version", std::string("sedkit ") + kVersion);
  app.require_subcommand(1);

  SynthArgs synth;
  auto *c_synth = app.add_subcommand("synth", "Generate a synthetic labelled dataset");
  c_synth->add_option("--scene", synth.scene, "Scene JSON")->required();
  c_synth->add_option("--out", synth.out, "Output directory")->required();
  c_synth->add_option("--seed", synth.seed, "Overrides the scene seed");

  FeaturizeArgs feat;
  auto *c_feat = app.add_subcommand("featurize", "WAV directory to log-mel features");
  c_feat->add_option("--in", feat.in, "Directory of WAV files")->required();
  c_feat->add_option("--out", feat.out, "Output directory")->required();
  c_feat->add_option("--frontend", feat.frontend, "Frontend JSON");
  c_feat->add_flag("--no-normalize", feat.no_normalize, "Skip peak normalization");

  AugmentArgs aug;
  auto *c_aug = app.add_subcommand("augment", "Student/teacher augmented views of features");
  auto *o_preset = c_aug->add_option("--preset", aug.preset, "Named preset");
  auto *o_config = c_aug->add_option("--config", aug.config, "AugmentConfig JSON");
  o_preset->excludes(o_config);
  c_aug->add_option("--seed", aug.seed, "Random seed")->required();
  c_aug->add_option("--views", aug.views, "Views to write: student,teacher");
  c_aug->add_option("--in", aug.in, "Feature directory")->required();
  c_aug->add_option("--out", aug.out, "Output directory")->required();
  c_aug->add_option("--gt", aug.gt, "Strong-label TSV; labels are transformed alongside");

  DetectArgs det;
  auto *c_det = app.add_subcommand("detect", "Run the toy detector on features");
  c_det->add_option("--features", det.features, "Feature directory")->required();
  c_det->add_option("--toy-config", det.toy_config, "Toy detector JSON")->required();
  c_det->add_option("--out", det.out, "Score directory")->required();

  DecodeArgs dec;
  auto *c_dec = app.add_subcommand("decode", "Scores to events");
  c_dec->add_option("--scores", dec.scores, "Score directory")->required();
  c_dec->add_option("--threshold", dec.threshold, "One threshold, or one per class")
      ->delimiter(',');
  c_dec->add_option("--median", dec.median, "Median filter length (odd)");
  c_dec->add_flag("--weak-mask,!--no-weak-mask", dec.weak_mask, "Mask classes by weak score");
  c_dec->add_option("--out", dec.out, "Events TSV")->required();

  DecodeArgs wsed;
  auto *c_wsed = app.add_subcommand("weak-sed", "Full-clip events from weak scores");
  c_wsed->add_option("--scores", wsed.scores, "Score directory")->required();
  c_wsed->add_option("--threshold", wsed.threshold, "One threshold, or one per class")
      ->delimiter(',');
  c_wsed->add_option("--out", wsed.out, "Events TSV")->required();

  EvalPsdsArgs ep;
  auto *c_ep = app.add_subcommand("eval-psds", "PSDS evaluation over a threshold sweep");
  c_ep->add_option("--scores", ep.scores, "Score directory")->required();
  c_ep->add_option("--gt", ep.gt, "Ground-truth TSV")->required();
  c_ep->add_option("--durations", ep.durations, "Clip durations CSV")->required();
  c_ep->add_option("--scenario", ep.scenario, "1, 2, or a scenario JSON");
  c_ep->add_option("--out", ep.out, "Report JSON")->required();
  c_ep->add_option("--plot", ep.plot, "PSD-ROC SVG");
  c_ep->add_option("--median", ep.median, "Median filter length (odd)");
  c_ep->add_option("--thresholds", ep.threshold_count, "Number of operating points");
  c_ep->add_flag("--no-weak-mask", ep.no_weak_mask, "Disable weak masking");
  c_ep->add_flag("--weak-sed", ep.weak_sed, "Decode with weak SED");

  EvalF1Args ef;
  auto *c_ef = app.add_subcommand("eval-f1", "Collar-based event F1");
  c_ef->add_option("--events", ef.events, "Detected events TSV")->required();
  c_ef->add_option("--gt", ef.gt, "Ground-truth TSV")->required();
  c_ef->add_option("--out", ef.out, "Report JSON")->required();
  c_ef->add_option("--onset-collar", ef.onset_collar, "Seconds");
  c_ef->add_option("--offset-collar-ratio", ef.offset_ratio, "Fraction of GT duration");

  AblateArgs abl;
  auto *c_abl = app.add_subcommand("ablate", "Augmentation ablation table");
  c_abl->add_option("--grid", abl.grid, "Grid JSON")->required();
  c_abl->add_option("--scene", abl.scene, "Scene JSON")->required();
  c_abl->add_option("--out", abl.out, "Output CSV")->required();
  c_abl->add_option("--seed", abl.seed, "Overrides the scene seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::vector<std::string> args(argv, argv + argc);
  CLI::App *sub = app.get_subcommands().front();
  Manifest manifest(sub->get_name(), args);
  try {
    if (sub == c_synth) {
      RunSynth(synth, manifest);
    } else if (sub == c_feat) {
      RunFeaturize(feat, manifest);
    } else if (sub == c_aug) {
      if (aug.preset.empty() == aug.config.empty())
        throw UsageError("augment needs exactly one of --preset and --config");
      RunAugment(aug, manifest);
    } else if (sub == c_det) {
      RunDetect(det, manifest);
    } else if (sub == c_dec) {
      RunDecode(dec, false, manifest);
    } else if (sub == c_wsed) {
      wsed.weak_mask = false;
      RunDecode(wsed, true, manifest);
    } else if (sub == c_ep) {
      RunEvalPsds(ep, manifest);
    } else if (sub == c_ef) {
      RunEvalF1(ef, manifest);
    } else if (sub == c_abl) {
      RunAblate(abl, manifest);
    }
    manifest.Write();
  } catch (const UsageError &e) {
    std::cerr << "sedkit " << sub->get_name() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    std::cerr << "sedkit " << sub->get_name() << ": " << e.what() << "\n";
    return IsConfigError(e.kind()) ? kExitConfig : kExitData;
  } catch (const fs::filesystem_error &e) {
    std::cerr << "sedkit " << sub->get_name() << ": IoError: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}

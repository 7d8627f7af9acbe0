// include/sedkit/formats.h

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

#ifndef SEDKIT_FORMATS_H_
#define SEDKIT_FORMATS_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sedkit/augment.h"
#include "sedkit/config.h"
#include "sedkit/evaluate.h"
#include "sedkit/frontend.h"
#include "sedkit/postprocess.h"

namespace sedkit {

namespace fs = std::filesystem;

/// Shortest decimal that parses back to the same double.
std::string FormatDouble(double v);
/// Fixed three decimals, as used for event times.
std::string FormatSeconds(double v);
double ParseDouble(const std::string &text, const std::string &context);

std::string ReadTextFile(const fs::path &path);
/// Writes to a temporary sibling and renames it into place.
void WriteFileAtomic(const fs::path &path, const std::string &content);

/// "clip_0001.wav" -> "clip_0001".
std::string ClipStem(const std::string &clip_id);

/// Files in dir with the given extension, sorted by name.
std::vector<fs::path> ListFiles(const fs::path &dir, const std::string &extension);

// WAV: reads 16-bit PCM and 32-bit float, mono or stereo (averaged to mono).
Waveform ReadWav(const fs::path &path);
/// 32-bit float mono.
std::string EncodeWav(const Waveform &w);
void WriteWav(const fs::path &path, const Waveform &w);

// Feature files: <stem>.csv (header mel_0..mel_{M-1}, one row per frame) and
// <stem>.json {hop_seconds, clip_duration_seconds, domain, n_mels, log_floor}.
void WriteMelSpec(const fs::path &dir, const std::string &stem, const MelSpec &spec);
MelSpec ReadMelSpec(const fs::path &csv_path);

// Score files: <stem>.csv ("time_s,<class1>,...") and <stem>.json
// {clip_id, hop_seconds, clip_duration_seconds, weak: {class: score}}.
void WriteScores(const fs::path &dir, const ScoreMatrix &scores);
ScoreMatrix ReadScores(const fs::path &csv_path);
std::vector<ScoreMatrix> ReadScoreDir(const fs::path &dir);

// Strong labels: same layout as score files, values in [0, 1].
void WriteLabels(const fs::path &dir, const std::string &clip_id, const LabelSet &labels,
                 double hop_seconds);

/// "filename\tonset\toffset\tevent_label", three decimals.
std::string EventsTsv(const DetectionSet &dets);
void WriteEventsTsv(const fs::path &path, const DetectionSet &dets);
DetectionSet ReadEventsTsv(const fs::path &path);

/// "filename,duration".
std::map<std::string, double> ReadDurationsCsv(const fs::path &path);
std::string DurationsCsv(const std::map<std::string, double> &durations);

/// Ground truth from an events TSV plus a durations CSV. Class names are the
/// union of class_names (in order) and labels seen in the TSV (sorted).
GroundTruth ReadGroundTruth(const fs::path &tsv, const fs::path &durations_csv,
                            const std::vector<std::string> &class_names = {});

/// Rasterized strong labels for one clip, weak = per-class max.
LabelSet LabelsFromEvents(const std::vector<Event> &events, Eigen::Index num_frames,
                          double hop_seconds, const std::vector<std::string> &class_names);

Json ReportToJson(const PsdsReport &report);
Json F1ToJson(const F1Report &report, double onset_collar, double offset_collar_ratio);
/// PSD-ROC staircase (effective TPR) plus per-class staircases.
std::string PsdRocSvg(const PsdsReport &report);

}  // namespace sedkit

#endif  // SEDKIT_FORMATS_H_

// include/sedkit/evaluate.h

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

#ifndef SEDKIT_EVALUATE_H_
#define SEDKIT_EVALUATE_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sedkit/postprocess.h"

namespace sedkit {

struct GroundTruth {
  std::vector<std::pair<std::string, Event>> events;  // (clip_id, event)
  std::map<std::string, double> clip_durations;
  std::vector<std::string> class_names;

  /// Throws InvalidGroundTruth / UnknownClip / UnknownClass on violations.
  void Validate() const;
  double total_hours() const;
};

/// Detections keyed by clip id.
using DetectionSet = std::map<std::string, std::vector<Event>>;

struct ScenarioConfig {
  double rho_dtc = 0.7;
  double rho_gtc = 0.7;
  std::optional<double> rho_cttc;
  double alpha_ct = 0.0;
  double alpha_st = 1.0;
  double e_max = 100.0;

  void Validate() const;
};

/// Scenario 1: {0.7, 0.7, no CTTC, alpha_ct 0, alpha_st 1}.
ScenarioConfig Scenario1();
/// Scenario 2: {0.1, 0.1, CTTC 0.3, alpha_ct 0.5, alpha_st 1}.
ScenarioConfig Scenario2();

struct OperatingPointCounts {
  std::vector<double> threshold;
  std::vector<long> tp;
  std::vector<long> n_gt;
  std::vector<long> fp;
  std::vector<std::vector<long>> ct;  // [triggering class][cross-triggered class]
};

struct ClassRates {
  std::vector<double> tpr;
  std::vector<double> efpr;  // effective false positives per hour
};

struct RocPoint {
  double efpr = 0.0;
  double tpr = 0.0;
};

struct PsdRoc {
  /// Breakpoints of the effective-TPR staircase over [0, e_max]; value
  /// etpr[i] holds on [efpr[i], efpr[i+1]).
  std::vector<double> efpr;
  std::vector<double> etpr;
  std::vector<std::vector<RocPoint>> per_class;  // running-max staircases
  double psds = 0.0;
};

struct PsdsReport {
  ScenarioConfig scenario;
  std::vector<std::string> class_names;
  std::vector<OperatingPointCounts> points;
  std::vector<ClassRates> rates;
  PsdRoc roc;
};

/// Length of the overlap of [a_on, a_off] and [b_on, b_off]; 0 if disjoint.
double Intersect(double a_on, double a_off, double b_on, double b_off);
inline double Intersect(const Event &a, const Event &b) {
  return Intersect(a.onset, a.offset, b.onset, b.offset);
}

/// Intersection-criterion matching (DTC, GTC, CTTC) of one operating point.
OperatingPointCounts MatchOperatingPoint(const DetectionSet &dets, const GroundTruth &gt,
                                         const ScenarioConfig &sc,
                                         const std::vector<double> &threshold);

/// Per-class TPR and effective FPR (FP per hour plus the weighted
/// cross-trigger rate).
ClassRates EffectiveRates(const OperatingPointCounts &counts, const GroundTruth &gt,
                          const ScenarioConfig &sc);

/// PSD-ROC staircase and its normalized area, integrated exactly.
PsdRoc PsdRocCurve(const std::vector<ClassRates> &points, const ScenarioConfig &sc);

struct ClassF1 {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct F1Report {
  std::vector<std::string> class_names;
  std::vector<ClassF1> per_class;
  double macro_f1 = 0.0;
};

/// Collar-based event F1 with greedy one-to-one matching in onset order.
F1Report EventF1(const DetectionSet &dets, const GroundTruth &gt, double onset_collar = 0.2,
                 double offset_collar_ratio = 0.2);

/// 50 thresholds evenly spaced over [0.01, 0.99].
std::vector<double> DefaultThresholds(int count = 50);

/// Decodes every clip at every threshold and assembles the PSDS report.
/// decode.threshold is ignored; each entry of thresholds is applied to all
/// classes.
PsdsReport EvaluateSystem(const std::vector<ScoreMatrix> &scores, const GroundTruth &gt,
                          const ScenarioConfig &sc, const DecodeConfig &decode,
                          const std::vector<double> &thresholds);

/// Decodes every clip with decode.threshold.
DetectionSet DecodeAll(const std::vector<ScoreMatrix> &scores, const DecodeConfig &decode);

}  // namespace sedkit

#endif  // SEDKIT_EVALUATE_H_

// src/evaluate.cc

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

#include "sedkit/evaluate.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>

#include "sedkit/error.h"
#include "sedkit/parallel.h"

namespace sedkit {

void GroundTruth::Validate() const {
  std::set<std::string> known(class_names.begin(), class_names.end());
  if (known.size() != class_names.size())
    throw Error(ErrorKind::kInvalidGroundTruth, "duplicate class names");
  for (const auto &[clip, duration] : clip_durations)
    if (!(duration > 0.0))
      throw Error(ErrorKind::kInvalidGroundTruth, clip + ": duration must be positive");
  for (const auto &[clip, e] : events) {
    auto it = clip_durations.find(clip);
    if (it == clip_durations.end())
      throw Error(ErrorKind::kUnknownClip, "ground-truth clip '" + clip + "' has no duration");
    if (!known.count(e.class_name))
      throw Error(ErrorKind::kUnknownClass, "ground-truth class '" + e.class_name + "'");
    if (!(e.onset >= 0.0 && e.onset < e.offset && e.offset <= it->second + 1e-9))
      throw Error(ErrorKind::kInvalidGroundTruth, clip + ": event interval out of range");
  }
}

double GroundTruth::total_hours() const {
  double seconds = 0.0;
  for (const auto &[clip, duration] : clip_durations) seconds += duration;
  return seconds / 3600.0;
}

void ScenarioConfig::Validate() const {
  auto in_unit = [](double r) { return r > 0.0 && r <= 1.0; };
  if (!in_unit(rho_dtc) || !in_unit(rho_gtc) || (rho_cttc && !in_unit(*rho_cttc)))
    throw Error(ErrorKind::kInvalidConfig, "tolerances must lie in (0, 1]");
  if (alpha_ct < 0.0 || alpha_st < 0.0)
    throw Error(ErrorKind::kInvalidConfig, "alpha_ct and alpha_st must be >= 0");
  if (alpha_ct > 0.0 && !rho_cttc)
    throw Error(ErrorKind::kInvalidConfig, "alpha_ct > 0 requires rho_cttc");
  if (!(e_max > 0.0)) throw Error(ErrorKind::kInvalidConfig, "e_max must be positive");
}

ScenarioConfig Scenario1() { return ScenarioConfig{}; }

ScenarioConfig Scenario2() {
  ScenarioConfig sc;
  sc.rho_dtc = 0.1;
  sc.rho_gtc = 0.1;
  sc.rho_cttc = 0.3;
  sc.alpha_ct = 0.5;
  sc.alpha_st = 1.0;
  return sc;
}

double Intersect(double a_on, double a_off, double b_on, double b_off) {
  return std::max(0.0, std::min(a_off, b_off) - std::max(a_on, b_on));
}

namespace {

std::unordered_map<std::string, std::size_t> ClassIndex(const std::vector<std::string> &names) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  return index;
}

std::size_t LookupClass(const std::unordered_map<std::string, std::size_t> &index,
                        const std::string &name) {
  auto it = index.find(name);
  if (it == index.end()) throw Error(ErrorKind::kUnknownClass, "class '" + name + "'");
  return it->second;
}

}  // namespace

OperatingPointCounts MatchOperatingPoint(const DetectionSet &dets, const GroundTruth &gt,
                                         const ScenarioConfig &sc,
                                         const std::vector<double> &threshold) {
  sc.Validate();
  const std::size_t n_classes = gt.class_names.size();
  const auto index = ClassIndex(gt.class_names);

  OperatingPointCounts counts;
  counts.threshold = threshold;
  counts.tp.assign(n_classes, 0);
  counts.n_gt.assign(n_classes, 0);
  counts.fp.assign(n_classes, 0);
  counts.ct.assign(n_classes, std::vector<long>(n_classes, 0));

  // Ground truth grouped by clip.
  std::map<std::string, std::vector<std::pair<std::size_t, const Event *>>> gt_by_clip;
  for (const auto &[clip, e] : gt.events) {
    std::size_t c = LookupClass(index, e.class_name);
    gt_by_clip[clip].emplace_back(c, &e);
    ++counts.n_gt[c];
  }

  for (const auto &[clip, clip_dets] : dets) {
    if (!gt.clip_durations.count(clip))
      throw Error(ErrorKind::kUnknownClip, "detections for unknown clip '" + clip + "'");
    static const std::vector<std::pair<std::size_t, const Event *>> kNoEvents;
    auto found = gt_by_clip.find(clip);
    const auto &clip_gt = found == gt_by_clip.end() ? kNoEvents : found->second;

    std::vector<std::size_t> det_class(clip_dets.size());
    std::vector<bool> passes(clip_dets.size(), false);
    for (std::size_t i = 0; i < clip_dets.size(); ++i) {
      const Event &d = clip_dets[i];
      det_class[i] = LookupClass(index, d.class_name);
      const double duration = d.duration();
      if (!(duration > 0.0))
        throw Error(ErrorKind::kParseError, clip + ": detection with non-positive duration");
      double overlap = 0.0;
      for (const auto &[c, g] : clip_gt)
        if (c == det_class[i]) overlap += Intersect(d, *g);
      passes[i] = overlap / duration >= sc.rho_dtc;
      if (!passes[i]) ++counts.fp[det_class[i]];
    }

    for (const auto &[c, g] : clip_gt) {
      double overlap = 0.0;
      for (std::size_t i = 0; i < clip_dets.size(); ++i)
        if (passes[i] && det_class[i] == c) overlap += Intersect(*g, clip_dets[i]);
      if (overlap / g->duration() >= sc.rho_gtc) ++counts.tp[c];
    }

    if (sc.rho_cttc) {
      for (std::size_t i = 0; i < clip_dets.size(); ++i) {
        if (passes[i]) continue;
        const Event &d = clip_dets[i];
        for (const auto &[k, g] : clip_gt) {
          if (k == det_class[i]) continue;
          if (Intersect(d, *g) / d.duration() >= *sc.rho_cttc) ++counts.ct[det_class[i]][k];
        }
      }
    }
  }
  return counts;
}

ClassRates EffectiveRates(const OperatingPointCounts &counts, const GroundTruth &gt,
                          const ScenarioConfig &sc) {
  const double dataset_hours = gt.total_hours();
  if (!(dataset_hours > 0.0))
    throw Error(ErrorKind::kInvalidGroundTruth, "dataset duration is zero");
  const std::size_t n_classes = gt.class_names.size();
  const auto index = ClassIndex(gt.class_names);

  std::vector<double> class_gt_hours(n_classes, 0.0);
  for (const auto &[clip, e] : gt.events)
    class_gt_hours[LookupClass(index, e.class_name)] += e.duration() / 3600.0;

  ClassRates rates;
  rates.tpr.assign(n_classes, 0.0);
  rates.efpr.assign(n_classes, 0.0);
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (counts.n_gt[c] > 0)
      rates.tpr[c] = static_cast<double>(counts.tp[c]) / static_cast<double>(counts.n_gt[c]);
    double efpr = static_cast<double>(counts.fp[c]) / dataset_hours;
    if (sc.alpha_ct > 0.0 && n_classes > 1) {
      double cross = 0.0;
      for (std::size_t k = 0; k < n_classes; ++k) {
        if (k == c || class_gt_hours[k] <= 0.0) continue;
        cross += static_cast<double>(counts.ct[c][k]) / class_gt_hours[k];
      }
      efpr += sc.alpha_ct * cross / static_cast<double>(n_classes - 1);
    }
    rates.efpr[c] = efpr;
  }
  return rates;
}

PsdRoc PsdRocCurve(const std::vector<ClassRates> &points, const ScenarioConfig &sc) {
  sc.Validate();
  if (points.empty()) throw Error(ErrorKind::kNoOperatingPoints, "no operating points");
  const std::size_t n_classes = points.front().tpr.size();
  for (const auto &p : points)
    if (p.tpr.size() != n_classes || p.efpr.size() != n_classes)
      throw Error(ErrorKind::kShapeMismatch, "operating points disagree on class count");

  PsdRoc roc;
  roc.per_class.resize(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::vector<RocPoint> raw;
    raw.reserve(points.size());
    for (const auto &p : points) raw.push_back({p.efpr[c], p.tpr[c]});
    std::sort(raw.begin(), raw.end(), [](const RocPoint &a, const RocPoint &b) {
      return std::tie(a.efpr, a.tpr) < std::tie(b.efpr, b.tpr);
    });
    // Keep one point per distinct eFPR with the running-max TPR.
    auto &stair = roc.per_class[c];
    double best = 0.0;
    for (const RocPoint &p : raw) {
      best = std::max(best, p.tpr);
      if (!stair.empty() && stair.back().efpr == p.efpr)
        stair.back().tpr = best;
      else
        stair.push_back({p.efpr, best});
    }
  }

  auto class_tpr_at = [&](std::size_t c, double e) {
    const auto &stair = roc.per_class[c];
    auto it = std::upper_bound(stair.begin(), stair.end(), e,
                               [](double v, const RocPoint &p) { return v < p.efpr; });
    return it == stair.begin() ? 0.0 : std::prev(it)->tpr;
  };

  std::vector<double> breaks{0.0};
  for (const auto &stair : roc.per_class)
    for (const RocPoint &p : stair)
      if (p.efpr > 0.0 && p.efpr < sc.e_max) breaks.push_back(p.efpr);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double area = 0.0;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    double mean = 0.0;
    std::vector<double> tprs(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
      tprs[c] = class_tpr_at(c, breaks[i]);
      mean += tprs[c];
    }
    double etpr = 0.0;
    if (n_classes > 0) {
      mean /= static_cast<double>(n_classes);
      double var = 0.0;
      for (double v : tprs) var += (v - mean) * (v - mean);
      var /= static_cast<double>(n_classes);
      etpr = mean - sc.alpha_st * std::sqrt(var);
    }
    roc.efpr.push_back(breaks[i]);
    roc.etpr.push_back(etpr);
    const double next = i + 1 < breaks.size() ? breaks[i + 1] : sc.e_max;
    area += std::clamp(etpr, 0.0, 1.0) * (next - breaks[i]);
  }
  roc.psds = std::clamp(area / sc.e_max, 0.0, 1.0);
  return roc;
}

F1Report EventF1(const DetectionSet &dets, const GroundTruth &gt, double onset_collar,
                 double offset_collar_ratio) {
  F1Report report;
  report.class_names = gt.class_names;
  std::set<std::string> extra;
  for (const auto &[clip, events] : dets)
    for (const Event &e : events)
      if (std::find(gt.class_names.begin(), gt.class_names.end(), e.class_name) ==
          gt.class_names.end())
        extra.insert(e.class_name);
  report.class_names.insert(report.class_names.end(), extra.begin(), extra.end());

  struct Item {
    const std::string *clip;
    const Event *event;
  };
  auto by_onset = [](const Item &a, const Item &b) {
    return std::tie(a.event->onset, *a.clip, a.event->offset) <
           std::tie(b.event->onset, *b.clip, b.event->offset);
  };

  double f1_sum = 0.0;
  int scored_classes = 0;
  for (const std::string &cls : report.class_names) {
    std::vector<Item> det_items, gt_items;
    for (const auto &[clip, events] : dets)
      for (const Event &e : events)
        if (e.class_name == cls) det_items.push_back({&clip, &e});
    for (const auto &[clip, e] : gt.events)
      if (e.class_name == cls) gt_items.push_back({&clip, &e});
    std::stable_sort(det_items.begin(), det_items.end(), by_onset);
    std::stable_sort(gt_items.begin(), gt_items.end(), by_onset);

    std::vector<bool> used(gt_items.size(), false);
    ClassF1 s;
    for (const Item &d : det_items) {
      for (std::size_t j = 0; j < gt_items.size(); ++j) {
        const Item &g = gt_items[j];
        if (used[j] || *g.clip != *d.clip) continue;
        const double offset_collar =
            std::max(onset_collar, offset_collar_ratio * g.event->duration());
        if (std::abs(d.event->onset - g.event->onset) <= onset_collar &&
            std::abs(d.event->offset - g.event->offset) <= offset_collar) {
          used[j] = true;
          ++s.tp;
          break;
        }
      }
    }
    s.fp = static_cast<long>(det_items.size()) - s.tp;
    s.fn = static_cast<long>(gt_items.size()) - s.tp;
    if (s.tp + s.fp > 0) s.precision = static_cast<double>(s.tp) / (s.tp + s.fp);
    if (s.tp + s.fn > 0) s.recall = static_cast<double>(s.tp) / (s.tp + s.fn);
    const long denom = 2 * s.tp + s.fp + s.fn;
    if (denom > 0) {
      s.f1 = 2.0 * s.tp / denom;
      f1_sum += s.f1;
      ++scored_classes;  // classes with neither references nor detections are skipped
    }
    report.per_class.push_back(s);
  }
  report.macro_f1 = scored_classes > 0 ? f1_sum / scored_classes : 0.0;
  return report;
}

std::vector<double> DefaultThresholds(int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = 0.5;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = 0.01 + (0.99 - 0.01) * i / (count - 1);
  return out;
}

DetectionSet DecodeAll(const std::vector<ScoreMatrix> &scores, const DecodeConfig &decode) {
  decode.Validate();
  std::vector<std::vector<Event>> decoded(scores.size());
  ParallelFor(scores.size(), [&](std::size_t i) {
    scores[i].Validate();
    decoded[i] = DecodeClip(scores[i], decode);
  });
  DetectionSet dets;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto [it, inserted] = dets.emplace(scores[i].clip_id, std::move(decoded[i]));
    if (!inserted)
      throw Error(ErrorKind::kShapeMismatch, "duplicate scores for clip '" + scores[i].clip_id + "'");
  }
  return dets;
}

PsdsReport EvaluateSystem(const std::vector<ScoreMatrix> &scores, const GroundTruth &gt,
                          const ScenarioConfig &sc, const DecodeConfig &decode,
                          const std::vector<double> &thresholds) {
  gt.Validate();
  sc.Validate();
  if (thresholds.empty()) throw Error(ErrorKind::kNoOperatingPoints, "no thresholds given");
  for (const ScoreMatrix &s : scores) {
    s.Validate();
    for (const std::string &name : s.class_names)
      if (std::find(gt.class_names.begin(), gt.class_names.end(), name) == gt.class_names.end())
        throw Error(ErrorKind::kUnknownClass, s.clip_id + ": class '" + name + "'");
  }

  PsdsReport report;
  report.scenario = sc;
  report.class_names = gt.class_names;
  report.points.resize(thresholds.size());
  report.rates.resize(thresholds.size());
  ParallelFor(thresholds.size(), [&](std::size_t i) {
    DecodeConfig cfg = decode;
    cfg.threshold = {thresholds[i]};
    cfg.Validate();
    DetectionSet dets;
    for (const ScoreMatrix &s : scores) {
      auto &clip_dets = dets[s.clip_id];
      auto events = DecodeClip(s, cfg);
      clip_dets.insert(clip_dets.end(), events.begin(), events.end());
    }
    report.points[i] = MatchOperatingPoint(
        dets, gt, sc, std::vector<double>(gt.class_names.size(), thresholds[i]));
    report.rates[i] = EffectiveRates(report.points[i], gt, sc);
  });
  report.roc = PsdRocCurve(report.rates, sc);
  return report;
}

}  // namespace sedkit

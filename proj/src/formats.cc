// src/formats.cc

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

#include "sedkit/formats.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "sedkit/error.h"

namespace sedkit {

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error(ErrorKind::kIoError, "cannot format number");
  return std::string(buf, end);
}

std::string FormatSeconds(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

double ParseDouble(const std::string &text, const std::string &context) {
  double v = 0.0;
  const char *begin = text.data();
  const char *end = text.data() + text.size();
  while (begin < end && (*begin == ' ' || *begin == '+')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\r')) --end;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw Error(ErrorKind::kParseError, context + ": '" + text + "' is not a number");
  return v;
}

std::string ReadTextFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const fs::path &path, const std::string &content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::kIoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string ClipStem(const std::string &clip_id) {
  return fs::path(clip_id).stem().string();
}

std::vector<fs::path> ListFiles(const fs::path &dir, const std::string &extension) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::kIoError, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == extension)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

std::vector<std::string> Split(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::uint32_t ReadU32(const std::string &b, std::size_t off) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[off])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 3])) << 24;
}

std::uint16_t ReadU16(const std::string &b, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[off]) |
                                    static_cast<unsigned char>(b[off + 1]) << 8);
}

void PutU32(std::string &b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutU16(std::string &b, std::uint16_t v) {
  b.push_back(static_cast<char>(v & 0xFF));
  b.push_back(static_cast<char>(v >> 8));
}

Json ParseJson(const fs::path &path) {
  try {
    return Json::parse(ReadTextFile(path));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParseError, path.string() + ": " + e.what());
  }
}

template <typename T>
T JsonField(const Json &j, const char *key, const fs::path &path) {
  if (!j.contains(key)) throw Error(ErrorKind::kParseError, path.string() + ": missing '" + key + "'");
  try {
    return j[key].get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParseError, path.string() + ": field '" + key + "': " + e.what());
  }
}

}  // namespace

Waveform ReadWav(const fs::path &path) {
  const std::string b = ReadTextFile(path);
  if (b.size() < 12 || b.compare(0, 4, "RIFF") != 0 || b.compare(8, 4, "WAVE") != 0)
    throw Error(ErrorKind::kParseError, path.string() + ": not a RIFF/WAVE file");
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_off = 0, data_len = 0;
  std::size_t off = 12;
  while (off + 8 <= b.size()) {
    std::string id = b.substr(off, 4);
    std::uint32_t len = ReadU32(b, off + 4);
    std::size_t body = off + 8;
    if (id == "fmt ") {
      if (len < 16 || body + 16 > b.size())
        throw Error(ErrorKind::kParseError, path.string() + ": truncated fmt chunk");
      format = ReadU16(b, body);
      channels = ReadU16(b, body + 2);
      rate = ReadU32(b, body + 4);
      bits = ReadU16(b, body + 14);
      if (format == 0xFFFE && len >= 40) format = ReadU16(b, body + 24);
    } else if (id == "data") {
      data_off = body;
      data_len = std::min<std::size_t>(len, b.size() - body);
    }
    off = body + len + (len & 1);
  }
  if (channels == 0 || data_off == 0)
    throw Error(ErrorKind::kParseError, path.string() + ": missing fmt or data chunk");
  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32)
    throw Error(ErrorKind::kParseError,
                path.string() + ": only 16-bit PCM and 32-bit float WAV are supported");

  const std::size_t frame_bytes = static_cast<std::size_t>(channels) * (bits / 8);
  const std::size_t n = data_len / frame_bytes;
  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t ch = 0; ch < channels; ++ch) {
      std::size_t p = data_off + i * frame_bytes + ch * (bits / 8);
      if (pcm16) {
        acc += static_cast<std::int16_t>(ReadU16(b, p)) / 32768.0;
      } else {
        std::uint32_t u = ReadU32(b, p);
        float f;
        std::memcpy(&f, &u, sizeof(f));
        acc += f;
      }
    }
    w.samples[i] = acc / channels;
  }
  return w;
}

std::string EncodeWav(const Waveform &w) {
  const auto n = static_cast<std::uint32_t>(w.samples.size());
  std::string b;
  b.reserve(44 + 4 * n);
  b += "RIFF";
  PutU32(b, 36 + 4 * n);
  b += "WAVEfmt ";
  PutU32(b, 16);
  PutU16(b, 3);  // IEEE float
  PutU16(b, 1);
  PutU32(b, static_cast<std::uint32_t>(w.sample_rate));
  PutU32(b, static_cast<std::uint32_t>(w.sample_rate) * 4);
  PutU16(b, 4);
  PutU16(b, 32);
  b += "data";
  PutU32(b, 4 * n);
  for (double x : w.samples) {
    float f = static_cast<float>(x);
    std::uint32_t u;
    std::memcpy(&u, &f, sizeof(u));
    PutU32(b, u);
  }
  return b;
}

void WriteWav(const fs::path &path, const Waveform &w) { WriteFileAtomic(path, EncodeWav(w)); }

// ---------------------------------------------------------------------------

namespace {

std::string MatrixCsv(const std::string &header, const Matrix &m, const double *times) {
  std::string out = header + "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (times) out += FormatDouble(times[r]) + ",";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += FormatDouble(m(r, c));
    }
    out += '\n';
  }
  return out;
}

// Parses a numeric CSV with one header row; returns header cells and the body.
Matrix ParseCsvMatrix(const fs::path &path, std::vector<std::string> &header) {
  const std::string text = ReadTextFile(path);
  auto lines = Lines(text);
  if (lines.empty()) throw Error(ErrorKind::kParseError, path.string() + ": empty file");
  header = Split(lines[0], ',');
  const auto n_cols = static_cast<Eigen::Index>(header.size());
  Matrix m(static_cast<Eigen::Index>(lines.size() - 1), n_cols);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto cells = Split(lines[r], ',');
    if (static_cast<Eigen::Index>(cells.size()) != n_cols)
      throw Error(ErrorKind::kParseError,
                  path.string() + ": row " + std::to_string(r) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(n_cols));
    for (Eigen::Index c = 0; c < n_cols; ++c)
      m(static_cast<Eigen::Index>(r - 1), c) =
          ParseDouble(cells[c], path.string() + " row " + std::to_string(r));
  }
  return m;
}

}  // namespace

void WriteMelSpec(const fs::path &dir, const std::string &stem, const MelSpec &spec) {
  std::string header;
  for (Eigen::Index m = 0; m < spec.num_bins(); ++m) {
    if (m) header += ',';
    header += "mel_" + std::to_string(m);
  }
  WriteFileAtomic(dir / (stem + ".csv"), MatrixCsv(header, spec.data, nullptr));
  Json side;
  side["hop_seconds"] = spec.hop_seconds;
  side["clip_duration_seconds"] = spec.clip_duration_seconds;
  side["domain"] = std::string(DomainName(spec.domain));
  side["n_mels"] = spec.num_bins();
  side["log_floor"] = spec.log_floor;
  WriteFileAtomic(dir / (stem + ".json"), side.dump(2) + "\n");
}

MelSpec ReadMelSpec(const fs::path &csv_path) {
  std::vector<std::string> header;
  MelSpec spec;
  spec.data = ParseCsvMatrix(csv_path, header);
  fs::path side_path = csv_path;
  side_path.replace_extension(".json");
  Json side = ParseJson(side_path);
  spec.hop_seconds = JsonField<double>(side, "hop_seconds", side_path);
  spec.clip_duration_seconds = JsonField<double>(side, "clip_duration_seconds", side_path);
  spec.domain = ParseDomain(JsonField<std::string>(side, "domain", side_path));
  if (side.contains("log_floor")) spec.log_floor = JsonField<double>(side, "log_floor", side_path);
  if (JsonField<long>(side, "n_mels", side_path) != spec.num_bins())
    throw Error(ErrorKind::kShapeMismatch, csv_path.string() + ": n_mels disagrees with CSV width");
  return spec;
}

void WriteScores(const fs::path &dir, const ScoreMatrix &scores) {
  std::string header = "time_s";
  for (const auto &name : scores.class_names) header += "," + name;
  std::vector<double> times(static_cast<std::size_t>(scores.num_frames()));
  for (std::size_t t = 0; t < times.size(); ++t) times[t] = t * scores.hop_seconds;
  const std::string stem = ClipStem(scores.clip_id);
  WriteFileAtomic(dir / (stem + ".csv"), MatrixCsv(header, scores.strong, times.data()));
  Json side;
  side["clip_id"] = scores.clip_id;
  side["hop_seconds"] = scores.hop_seconds;
  side["clip_duration_seconds"] = scores.clip_duration_seconds;
  Json weak = Json::object();
  for (std::size_t c = 0; c < scores.class_names.size(); ++c)
    weak[scores.class_names[c]] = scores.weak[static_cast<Eigen::Index>(c)];
  side["weak"] = weak;
  WriteFileAtomic(dir / (stem + ".json"), side.dump(2) + "\n");
}

ScoreMatrix ReadScores(const fs::path &csv_path) {
  std::vector<std::string> header;
  Matrix body = ParseCsvMatrix(csv_path, header);
  if (header.empty() || header[0] != "time_s")
    throw Error(ErrorKind::kParseError, csv_path.string() + ": header must start with time_s");
  ScoreMatrix s;
  s.class_names.assign(header.begin() + 1, header.end());
  s.strong = body.rightCols(body.cols() - 1);
  fs::path side_path = csv_path;
  side_path.replace_extension(".json");
  Json side = ParseJson(side_path);
  s.clip_id = JsonField<std::string>(side, "clip_id", side_path);
  s.hop_seconds = JsonField<double>(side, "hop_seconds", side_path);
  s.clip_duration_seconds = JsonField<double>(side, "clip_duration_seconds", side_path);
  if (!side.contains("weak") || !side["weak"].is_object())
    throw Error(ErrorKind::kParseError, side_path.string() + ": missing weak scores");
  s.weak = Vector::Zero(s.num_classes());
  for (std::size_t c = 0; c < s.class_names.size(); ++c) {
    const auto &weak = side["weak"];
    if (!weak.contains(s.class_names[c]))
      throw Error(ErrorKind::kParseError,
                  side_path.string() + ": no weak score for '" + s.class_names[c] + "'");
    s.weak[static_cast<Eigen::Index>(c)] = weak[s.class_names[c]].get<double>();
  }
  s.Validate();
  return s;
}

std::vector<ScoreMatrix> ReadScoreDir(const fs::path &dir) {
  std::vector<ScoreMatrix> out;
  for (const auto &path : ListFiles(dir, ".csv")) out.push_back(ReadScores(path));
  return out;
}

void WriteLabels(const fs::path &dir, const std::string &clip_id, const LabelSet &labels,
                 double hop_seconds) {
  ScoreMatrix as_scores;
  as_scores.clip_id = clip_id;
  as_scores.strong = labels.strong.transpose();
  as_scores.weak = labels.weak;
  as_scores.hop_seconds = hop_seconds;
  as_scores.clip_duration_seconds = labels.num_frames() * hop_seconds;
  as_scores.class_names = labels.class_names;
  WriteScores(dir, as_scores);
}

// ---------------------------------------------------------------------------

std::string EventsTsv(const DetectionSet &dets) {
  std::string out = "filename\tonset\toffset\tevent_label\n";
  for (const auto &[clip, events] : dets)
    for (const Event &e : events)
      out += clip + "\t" + FormatSeconds(e.onset) + "\t" + FormatSeconds(e.offset) + "\t" +
             e.class_name + "\n";
  return out;
}

void WriteEventsTsv(const fs::path &path, const DetectionSet &dets) {
  WriteFileAtomic(path, EventsTsv(dets));
}

DetectionSet ReadEventsTsv(const fs::path &path) {
  auto lines = Lines(ReadTextFile(path));
  if (lines.empty() || lines[0] != "filename\tonset\toffset\tevent_label")
    throw Error(ErrorKind::kParseError,
                path.string() + ": expected header 'filename\\tonset\\toffset\\tevent_label'");
  DetectionSet dets;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = Split(lines[i], '\t');
    const std::string where = path.string() + " line " + std::to_string(i + 1);
    if (cells.size() == 1 || (cells.size() == 4 && cells[1].empty() && cells[3].empty())) {
      dets[cells[0]];  // clip listed without events
      continue;
    }
    if (cells.size() != 4) throw Error(ErrorKind::kParseError, where + ": expected 4 fields");
    Event e{cells[3], ParseDouble(cells[1], where), ParseDouble(cells[2], where)};
    if (!(e.onset < e.offset))
      throw Error(ErrorKind::kParseError, where + ": onset must precede offset");
    dets[cells[0]].push_back(e);
  }
  return dets;
}

std::map<std::string, double> ReadDurationsCsv(const fs::path &path) {
  auto lines = Lines(ReadTextFile(path));
  if (lines.empty() || lines[0] != "filename,duration")
    throw Error(ErrorKind::kParseError, path.string() + ": expected header 'filename,duration'");
  std::map<std::string, double> durations;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = Split(lines[i], ',');
    const std::string where = path.string() + " line " + std::to_string(i + 1);
    if (cells.size() != 2) throw Error(ErrorKind::kParseError, where + ": expected 2 fields");
    durations[cells[0]] = ParseDouble(cells[1], where);
  }
  return durations;
}

std::string DurationsCsv(const std::map<std::string, double> &durations) {
  std::string out = "filename,duration\n";
  for (const auto &[clip, d] : durations) out += clip + "," + FormatSeconds(d) + "\n";
  return out;
}

GroundTruth ReadGroundTruth(const fs::path &tsv, const fs::path &durations_csv,
                            const std::vector<std::string> &class_names) {
  GroundTruth gt;
  gt.clip_durations = ReadDurationsCsv(durations_csv);
  gt.class_names = class_names;
  std::set<std::string> seen(class_names.begin(), class_names.end());
  std::set<std::string> extra;
  for (const auto &[clip, events] : ReadEventsTsv(tsv)) {
    for (const Event &e : events) {
      gt.events.emplace_back(clip, e);
      if (!seen.count(e.class_name)) extra.insert(e.class_name);
    }
  }
  gt.class_names.insert(gt.class_names.end(), extra.begin(), extra.end());
  gt.Validate();
  return gt;
}

LabelSet LabelsFromEvents(const std::vector<Event> &events, Eigen::Index num_frames,
                          double hop_seconds, const std::vector<std::string> &class_names) {
  LabelSet labels;
  labels.class_names = class_names;
  labels.strong = RasterizeEvents(events, num_frames, hop_seconds, class_names).cast<double>();
  labels.RecomputeWeak();
  return labels;
}

// ---------------------------------------------------------------------------

Json ReportToJson(const PsdsReport &report) {
  Json j;
  j["scenario"] = ToJson(report.scenario);
  j["psds"] = report.roc.psds;
  j["class_names"] = report.class_names;
  Json points = Json::array();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto &p = report.points[i];
    Json pj;
    pj["threshold"] = p.threshold.empty() ? 0.0 : p.threshold.front();
    pj["tp"] = p.tp;
    pj["n_gt"] = p.n_gt;
    pj["fp"] = p.fp;
    pj["ct"] = p.ct;
    pj["tpr"] = report.rates[i].tpr;
    pj["efpr"] = report.rates[i].efpr;
    points.push_back(pj);
  }
  j["points"] = points;
  Json roc = Json::object();
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    Json stair = Json::array();
    for (const RocPoint &p : report.roc.per_class[c]) stair.push_back({p.efpr, p.tpr});
    roc[report.class_names[c]] = stair;
  }
  j["per_class_roc"] = roc;
  Json curve = Json::array();
  for (std::size_t i = 0; i < report.roc.efpr.size(); ++i)
    curve.push_back({report.roc.efpr[i], report.roc.etpr[i]});
  j["psd_roc"] = curve;
  return j;
}

Json F1ToJson(const F1Report &report, double onset_collar, double offset_collar_ratio) {
  Json j;
  j["onset_collar"] = onset_collar;
  j["offset_collar_ratio"] = offset_collar_ratio;
  j["macro_f1"] = report.macro_f1;
  Json per_class = Json::object();
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    const ClassF1 &s = report.per_class[c];
    per_class[report.class_names[c]] = {{"tp", s.tp},
                                        {"fp", s.fp},
                                        {"fn", s.fn},
                                        {"precision", s.precision},
                                        {"recall", s.recall},
                                        {"f1", s.f1}};
  }
  j["per_class"] = per_class;
  return j;
}

std::string PsdRocSvg(const PsdsReport &report) {
  const double width = 640, height = 400, margin = 50;
  const double e_max = report.scenario.e_max;
  auto x = [&](double e) { return margin + (width - 2 * margin) * std::min(e, e_max) / e_max; };
  auto y = [&](double v) {
    return height - margin - (height - 2 * margin) * std::clamp(v, 0.0, 1.0);
  };
  auto staircase = [&](const std::vector<std::pair<double, double>> &pts) {
    std::string d;
    bool first = true;
    for (const auto &[e, v] : pts) {
      if (e > e_max) break;
      if (first) {
        d += "M" + FormatDouble(x(e)) + "," + FormatDouble(y(v));
        first = false;
      } else {
        d += " H" + FormatDouble(x(e)) + " V" + FormatDouble(y(v));
      }
    }
    if (!first) d += " H" + FormatDouble(x(e_max));
    return d;
  };

  static const char *kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<line x1=\"50\" y1=\"350\" x2=\"590\" y2=\"350\" stroke=\"black\"/>\n";
  svg += "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"350\" stroke=\"black\"/>\n";
  svg += "<text x=\"320\" y=\"385\" text-anchor=\"middle\" font-size=\"12\">eFPR (per hour)</text>\n";
  svg += "<text x=\"15\" y=\"200\" font-size=\"12\" transform=\"rotate(-90 15 200)\">TPR</text>\n";
  for (std::size_t c = 0; c < report.roc.per_class.size(); ++c) {
    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    for (const RocPoint &p : report.roc.per_class[c]) pts.emplace_back(p.efpr, p.tpr);
    svg += "<path d=\"" + staircase(pts) + "\" fill=\"none\" stroke=\"" + kColors[c % 8] +
           "\" stroke-opacity=\"0.5\"><title>" + report.class_names[c] + "</title></path>\n";
  }
  std::vector<std::pair<double, double>> curve;
  for (std::size_t i = 0; i < report.roc.efpr.size(); ++i)
    curve.emplace_back(report.roc.efpr[i], report.roc.etpr[i]);
  svg += "<path d=\"" + staircase(curve) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  svg += "<text x=\"590\" y=\"40\" text-anchor=\"end\" font-size=\"12\">PSDS = " +
         FormatDouble(report.roc.psds) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace sedkit

// tests/postprocess_test.cc

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

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sedkit/error.h"
#include "sedkit/postprocess.h"

namespace sedkit {
namespace {

ScoreMatrix Scores(const std::vector<std::vector<double>> &columns, std::vector<double> weak,
                   double hop = 0.25, double duration = -1.0) {
  ScoreMatrix s;
  const auto n_classes = static_cast<Eigen::Index>(columns.size());
  const auto n_frames = static_cast<Eigen::Index>(columns.front().size());
  s.strong.resize(n_frames, n_classes);
  for (Eigen::Index c = 0; c < n_classes; ++c) {
    for (Eigen::Index t = 0; t < n_frames; ++t) s.strong(t, c) = columns[c][t];
    s.class_names.push_back("c" + std::to_string(c));
  }
  s.weak = Eigen::Map<Vector>(weak.data(), static_cast<Eigen::Index>(weak.size()));
  s.hop_seconds = hop;
  s.clip_duration_seconds = duration > 0.0 ? duration : hop * static_cast<double>(n_frames);
  return s;
}

ScoreMatrix RandomScores(std::mt19937_64 &gen, Eigen::Index frames, Eigen::Index classes) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScoreMatrix s;
  s.strong.resize(frames, classes);
  s.weak.resize(classes);
  for (Eigen::Index c = 0; c < classes; ++c) {
    s.class_names.push_back("c" + std::to_string(c));
    s.weak[c] = u(gen);
    double level = u(gen);
    for (Eigen::Index t = 0; t < frames; ++t) {
      if (u(gen) < 0.1) level = u(gen);
      s.strong(t, c) = level;
    }
  }
  s.hop_seconds = 0.016;
  s.clip_duration_seconds = 0.016 * static_cast<double>(frames);
  return s;
}

BinaryGrid Row(const std::vector<int> &bits) {
  BinaryGrid g(1, static_cast<Eigen::Index>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) g(0, static_cast<Eigen::Index>(i)) = static_cast<unsigned char>(bits[i]);
  return g;
}

// Sliding median with zeros outside the row, evaluated window by window.
BinaryGrid ReferenceMedian(const BinaryGrid &g, int len) {
  BinaryGrid out = BinaryGrid::Zero(g.rows(), g.cols());
  const int half = len / 2;
  for (Eigen::Index c = 0; c < g.rows(); ++c)
    for (Eigen::Index t = 0; t < g.cols(); ++t) {
      int ones = 0;
      for (int k = -half; k <= half; ++k) {
        const Eigen::Index j = t + k;
        if (j >= 0 && j < g.cols()) ones += g(c, j);
      }
      out(c, t) = ones * 2 > len ? 1 : 0;
    }
  return out;
}

TEST(BinarizeTest, Examples) {
  ScoreMatrix s = Scores({{0.9, 0.9}, {0.9, 0.9}}, {1.0, 1.0});
  EXPECT_TRUE((Binarize(s, {0.5}).array() == 1).all());
  ScoreMatrix col = Scores({{0.4, 0.6, 0.5}}, {0.6});
  BinaryGrid g = Binarize(col, {0.5});
  EXPECT_EQ(g, Row({0, 1, 1}));
}

TEST(BinarizeTest, PerClassThresholds) {
  ScoreMatrix s = Scores({{0.3, 0.6}, {0.3, 0.6}}, {1.0, 1.0});
  BinaryGrid g = Binarize(s, {0.2, 0.5});
  EXPECT_EQ(g(0, 0), 1);
  EXPECT_EQ(g(1, 0), 0);
  EXPECT_EQ(g(1, 1), 1);
  EXPECT_THROW(Binarize(s, {0.2, 0.3, 0.4}), Error);
}

TEST(WeakMaskingTest, Examples) {
  ScoreMatrix s = Scores({{0.9, 0.1, 0.8}, {0.9, 0.9, 0.9}}, {0.9, 0.2});
  BinaryGrid g = ApplyWeakMasking(s, {0.5});
  EXPECT_EQ(g.row(0), Binarize(s, {0.5}).row(0));
  EXPECT_TRUE((g.row(1).array() == 0).all());

  ScoreMatrix pass = Scores({{0.9, 0.1}, {0.2, 0.7}}, {0.6, 0.5});
  EXPECT_EQ(ApplyWeakMasking(pass, {0.5}), Binarize(pass, {0.5}));
}

TEST(WeakMaskingTest, SubsetOfUnmasked) {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 500; ++trial) {
    ScoreMatrix s = RandomScores(gen, 50, 4);
    const double tau = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
    BinaryGrid masked = ApplyWeakMasking(s, {tau}), plain = Binarize(s, {tau});
    ASSERT_TRUE((masked.array() <= plain.array()).all());
  }
}

TEST(MedianFilterTest, Examples) {
  EXPECT_EQ(MedianFilter(Row({0, 1, 0}), 3), Row({0, 0, 0}));
  EXPECT_EQ(MedianFilter(Row({1, 1, 0, 1, 1}), 3), Row({1, 1, 1, 1, 1}));
  BinaryGrid g = Row({1, 0, 1, 1, 0, 0, 1});
  EXPECT_EQ(MedianFilter(g, 1), g);
}

TEST(MedianFilterTest, EdgesTreatedAsZero) {
  EXPECT_EQ(MedianFilter(Row({1, 1, 1}), 5), Row({1, 1, 1}));
  EXPECT_EQ(MedianFilter(Row({1, 1}), 5), Row({0, 0}));
  EXPECT_EQ(MedianFilter(Row({1, 1, 1, 1}), 7), Row({1, 1, 1, 1}));
  EXPECT_EQ(MedianFilter(Row({1, 1, 1}), 7), Row({0, 0, 0}));
}

TEST(MedianFilterTest, MatchesReference) {
  std::mt19937_64 gen(2);
  std::bernoulli_distribution bit(0.45);
  for (int trial = 0; trial < 300; ++trial) {
    BinaryGrid g(3, 1 + trial % 40);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = bit(gen);
    for (int len : {1, 3, 5, 7, 9, 41})
      ASSERT_EQ(MedianFilter(g, len), ReferenceMedian(g, len)) << trial << " " << len;
  }
}

TEST(MedianFilterTest, RemovesShortIsolatedRuns) {
  for (int len : {3, 5, 7}) {
    const int half = (len - 1) / 2;
    for (int run = 1; run < (len + 1) / 2; ++run) {
      std::vector<int> bits(half + run + half + 4, 0);
      for (int i = 0; i < run; ++i) bits[half + 2 + i] = 1;
      EXPECT_TRUE((MedianFilter(Row(bits), len).array() == 0).all()) << len << " " << run;
    }
  }
}

TEST(MedianFilterTest, EvenLengthRejected) {
  try {
    MedianFilter(Row({1, 0}), 4);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidConfig);
    EXPECT_NE(std::string(e.what()).find("odd"), std::string::npos);
  }
  EXPECT_THROW(MedianFilter(Row({1, 0}), 0), Error);
}

TEST(DecodeEventsTest, Examples) {
  EXPECT_TRUE(DecodeEvents(BinaryGrid::Zero(2, 10), 0.25, 2.5, {"a", "b"}).empty());

  BinaryGrid g = BinaryGrid::Zero(1, 8);
  g.row(0).segment(2, 3).setOnes();
  auto events = DecodeEvents(g, 0.25, 2.0, {"a"});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0], (Event{"a", 0.5, 1.25}));

  auto two = DecodeEvents(Row({1, 1, 0, 1}), 0.25, 1.0, {"a"});
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[1], (Event{"a", 0.75, 1.0}));
}

TEST(DecodeEventsTest, OffsetClampedAndSorted) {
  BinaryGrid g = BinaryGrid::Zero(2, 5);
  g.row(0).segment(3, 2).setOnes();
  g.row(1).segment(0, 2).setOnes();
  g(0, 0) = 1;
  auto events = DecodeEvents(g, 0.3, 1.4, {"x", "y"});
  ASSERT_EQ(events.size(), 3u);
  EXPECT_EQ(events[0].class_name, "x");
  EXPECT_DOUBLE_EQ(events[0].onset, 0.0);
  EXPECT_DOUBLE_EQ(events[1].offset, 1.4);
  EXPECT_EQ(events[2].class_name, "y");
}

TEST(DecodeEventsTest, RasterizeRoundTrip) {
  std::mt19937_64 gen(3);
  std::bernoulli_distribution bit(0.3);
  const std::vector<std::string> names{"a", "b", "c"};
  for (int trial = 0; trial < 200; ++trial) {
    BinaryGrid g(3, 80);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = bit(gen);
    auto events = DecodeEvents(g, 0.016, 80 * 0.016, names);
    ASSERT_EQ(RasterizeEvents(events, 80, 0.016, names), g);
    for (const Event &e : events) ASSERT_LE(e.offset, 80 * 0.016);
  }
}

TEST(WeakSedTest, Examples) {
  ScoreMatrix s = Scores({{0.0, 0.0}, {1.0, 1.0}}, {0.8, 0.1}, 5.0, 10.0);
  auto events = WeakSedEvents(s, {0.5});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0], (Event{"c0", 0.0, 10.0}));
  EXPECT_TRUE(WeakSedEvents(s, {0.9}).empty());
  EXPECT_EQ(WeakSedEvents(s, {0.05}).size(), 2u);
}

TEST(DecodeClipTest, MaskedDecodeIsAllOrNothingPerClass) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 300; ++trial) {
    ScoreMatrix s = RandomScores(gen, 60, 3);
    DecodeConfig masked, plain;
    masked.threshold = plain.threshold = {std::uniform_real_distribution<double>(0.1, 0.9)(gen)};
    plain.weak_masking = false;
    auto a = DecodeClip(s, masked), b = DecodeClip(s, plain);
    for (const std::string &name : s.class_names) {
      std::vector<Event> ea, eb;
      for (const Event &e : a)
        if (e.class_name == name) ea.push_back(e);
      for (const Event &e : b)
        if (e.class_name == name) eb.push_back(e);
      ASSERT_TRUE(ea.empty() || ea == eb);
    }
  }
}

TEST(DecodeClipTest, WeakSedIgnoresStrong) {
  ScoreMatrix s = Scores({{0.9, 0.9, 0.9}, {0.0, 0.0, 0.0}}, {0.2, 0.7});
  DecodeConfig cfg;
  cfg.weak_sed = true;
  auto events = DecodeClip(s, cfg);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].class_name, "c1");
  EXPECT_DOUBLE_EQ(events[0].offset, s.clip_duration_seconds);
}

TEST(DecodeConfigTest, Validation) {
  DecodeConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.median_len = 4;
  try {
    cfg.Validate();
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidConfig);
    EXPECT_NE(std::string(e.what()).find("odd"), std::string::npos);
  }
  cfg = DecodeConfig{};
  cfg.threshold = {1.0};
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.threshold = {};
  EXPECT_THROW(cfg.Validate(), Error);
}

TEST(ScoreMatrixTest, Validation) {
  ScoreMatrix s = Scores({{0.1, 0.2}}, {0.3});
  EXPECT_NO_THROW(s.Validate());
  s.strong(0, 0) = 1.5;
  EXPECT_THROW(s.Validate(), Error);
  s = Scores({{0.1, 0.2}}, {0.3, 0.4});
  EXPECT_THROW(s.Validate(), Error);
  s = Scores({{0.1, 0.2}}, {0.3}, 0.25, 5.0);
  EXPECT_THROW(s.Validate(), Error);
}

}  // namespace
}  // namespace sedkit

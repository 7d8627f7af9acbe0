// tests/augment_test.cc

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

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sedkit/augment.h"
#include "sedkit/error.h"

namespace sedkit {
namespace {

MelSpec RandomLinear(Eigen::Index frames, Eigen::Index bins, std::uint64_t seed,
                     double zero_fraction = 0.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.01, 3.0), z(0.0, 1.0);
  MelSpec spec;
  spec.domain = SpecDomain::kLinearMagnitude;
  spec.data.resize(frames, bins);
  for (Eigen::Index i = 0; i < spec.data.size(); ++i)
    spec.data.data()[i] = z(gen) < zero_fraction ? 0.0 : u(gen);
  return spec;
}

MelSpec RandomLog(Eigen::Index frames, Eigen::Index bins, std::uint64_t seed) {
  return ToLog(RandomLinear(frames, bins, seed));
}

LabelSet Labels(Eigen::Index classes, Eigen::Index frames,
                const std::vector<std::tuple<int, int, int>> &events) {
  LabelSet l;
  l.strong = Matrix::Zero(classes, frames);
  for (Eigen::Index c = 0; c < classes; ++c) l.class_names.push_back("c" + std::to_string(c));
  for (auto [c, t0, t1] : events) l.strong.row(c).segment(t0, t1 - t0).setOnes();
  l.RecomputeWeak();
  return l;
}

TEST(RngTest, DeterministicAndForked) {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.UniformInt(0, 1000000), b.UniformInt(0, 1000000));
  Rng parent(42, 7);
  Rng f1 = parent.Fork(1), f1b = parent.Fork(1), f2 = parent.Fork(2);
  const auto x = f1.UniformInt(0, 1 << 30);
  EXPECT_EQ(x, f1b.UniformInt(0, 1 << 30));
  EXPECT_NE(x, f2.UniformInt(0, 1 << 30));
  Rng fresh(42, 7);
  EXPECT_EQ(parent.UniformInt(0, 1 << 30), fresh.UniformInt(0, 1 << 30));
}

TEST(RngTest, RangesInclusive) {
  Rng r(1, 0);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto v = r.UniformInt(-2, 2);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 2);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_EQ(r.Uniform(3.5, 3.5), 3.5);
  for (int i = 0; i < 1000; ++i) {
    double b = r.Beta(0.2, 0.2);
    ASSERT_GE(b, 0.0);
    ASSERT_LE(b, 1.0);
  }
}

TEST(LabelSetTest, HardnessAndWeak) {
  LabelSet l = Labels(2, 10, {{0, 2, 4}});
  EXPECT_TRUE(l.IsHard());
  EXPECT_EQ(l.weak[0], 1.0);
  EXPECT_EQ(l.weak[1], 0.0);
  l.strong(1, 3) = 0.25;
  EXPECT_FALSE(l.IsHard());
}

TEST(FilterBandsTest, SampledPartitionIsValid) {
  FilterAugmentConfig cfg;
  Rng rng(3, 0);
  for (int trial = 0; trial < 500; ++trial) {
    FilterBands b = SampleFilterBands(128, cfg, rng);
    ASSERT_GE(b.starts.size(), 2u);
    ASSERT_LE(b.starts.size(), 4u);
    ASSERT_EQ(b.starts.size(), b.gains_db.size());
    EXPECT_EQ(b.starts[0], 0);
    for (std::size_t i = 1; i < b.starts.size(); ++i) {
      EXPECT_GT(b.starts[i], b.starts[i - 1]);
      EXPECT_LT(b.starts[i], 128);
    }
    for (double g : b.gains_db) {
      EXPECT_GE(g, -7.5);
      EXPECT_LE(g, 6.0);
    }
  }
}

TEST(FilterAugmentTest, ZeroDbIsIdentity) {
  MelSpec spec = RandomLinear(50, 64, 1);
  FilterAugmentConfig cfg{0.0, 0.0, 1, 8};
  Rng rng(5, 0);
  for (int trial = 0; trial < 20; ++trial) EXPECT_EQ(FilterAugment(spec, cfg, rng).data, spec.data);
}

TEST(FilterAugmentTest, SingleBandIsOneScalar) {
  MelSpec spec = RandomLinear(40, 32, 2);
  FilterAugmentConfig cfg{-7.5, 6.0, 1, 1};
  Rng rng(6, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix ratio = FilterAugment(spec, cfg, rng).data.cwiseQuotient(spec.data);
    const double r0 = ratio(0, 0);
    EXPECT_LT((ratio.array() - r0).abs().maxCoeff(), 1e-12);
    EXPECT_GE(r0, std::pow(10.0, -7.5 / 20.0));
    EXPECT_LE(r0, std::pow(10.0, 6.0 / 20.0));
  }
}

TEST(FilterAugmentTest, RatiosBoundedAndConstantPerBand) {
  MelSpec spec = RandomLinear(30, 128, 3, 0.1);
  FilterAugmentConfig cfg;
  const double lo = std::pow(10.0, -7.5 / 20.0), hi = std::pow(10.0, 6.0 / 20.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng draw(seed, 0), apply(seed, 0);
    FilterBands bands = SampleFilterBands(128, cfg, draw);
    MelSpec out = FilterAugment(spec, cfg, apply);
    EXPECT_EQ(out.data, ApplyFilterBands(spec, bands).data);
    for (std::size_t b = 0; b < bands.starts.size(); ++b) {
      const int start = bands.starts[b];
      const int stop = b + 1 < bands.starts.size() ? bands.starts[b + 1] : 128;
      const double want = std::pow(10.0, bands.gains_db[b] / 20.0);
      for (Eigen::Index t = 0; t < spec.num_frames(); ++t)
        for (int m = start; m < stop; ++m) {
          const double in = spec.data(t, m), got = out.data(t, m);
          if (in == 0.0) {
            ASSERT_EQ(got, 0.0);
            continue;
          }
          ASSERT_NEAR(got / in, want, 1e-12);
          ASSERT_GE(got / in, lo - 1e-15);
          ASSERT_LE(got / in, hi + 1e-15);
        }
    }
  }
}

TEST(FilterAugmentTest, LogDomain) {
  MelSpec lin = RandomLinear(20, 64, 4);
  MelSpec log = ToLog(lin);
  FilterAugmentConfig cfg;
  Rng rng(1, 1);
  try {
    FilterAugment(log, cfg, rng);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomainMismatch);
  }
  Rng a(9, 9), b(9, 9);
  MelSpec via_linear = ToLog(FilterAugment(lin, cfg, a));
  MelSpec direct = FilterAugmentLog(log, cfg, b);
  EXPECT_LT((via_linear.data - direct.data).cwiseAbs().maxCoeff(), 1e-12);
  // Additive shift is constant along time within each bin.
  Matrix delta = direct.data - log.data;
  for (Eigen::Index m = 0; m < delta.cols(); ++m)
    EXPECT_LT((delta.col(m).array() - delta(0, m)).abs().maxCoeff(), 1e-12);
}

TEST(FilterAugmentTest, ConfigValidation) {
  MelSpec spec = RandomLinear(10, 8, 5);
  Rng rng(0, 0);
  EXPECT_THROW(FilterAugment(spec, FilterAugmentConfig{-1, 1, 2, 9}, rng), Error);
  EXPECT_THROW(FilterAugment(spec, FilterAugmentConfig{1, -1, 2, 4}, rng), Error);
  EXPECT_THROW(FilterAugment(spec, FilterAugmentConfig{-1, 1, 0, 4}, rng), Error);
  EXPECT_THROW(FilterAugment(spec, FilterAugmentConfig{-1, 1, 3, 2}, rng), Error);
  EXPECT_NO_THROW(FilterAugment(spec, FilterAugmentConfig{-1, 1, 8, 8}, rng));
}

TEST(FreqMaskTest, ZeroWidthIsIdentity) {
  MelSpec spec = RandomLog(20, 128, 6);
  Rng rng(0, 0);
  EXPECT_EQ(FreqMask(spec, 0, rng).data, spec.data);
}

TEST(FreqMaskTest, FullMask) {
  MelSpec spec = RandomLog(20, 16, 7);
  MelSpec out = ApplyFreqMask(spec, 0, 16);
  EXPECT_TRUE((out.data.array() == MaskValue(spec)).all());
  MelSpec lin = RandomLinear(5, 16, 7);
  EXPECT_TRUE((ApplyFreqMask(lin, 0, 16).data.array() == 0.0).all());
}

TEST(FreqMaskTest, AltersAtMostMaxBinsContiguous) {
  MelSpec spec = RandomLog(30, 128, 8);
  const double mask = MaskValue(spec);
  Rng rng(10, 0);
  std::set<int> widths;
  for (int trial = 0; trial < 500; ++trial) {
    MelSpec out = FreqMask(spec, 16, rng);
    std::vector<int> changed;
    for (int m = 0; m < 128; ++m) {
      if (out.data.col(m) == spec.data.col(m)) continue;
      ASSERT_TRUE((out.data.col(m).array() == mask).all());
      changed.push_back(m);
    }
    ASSERT_LE(changed.size(), 16u);
    if (!changed.empty()) {
      ASSERT_EQ(changed.back() - changed.front() + 1, static_cast<int>(changed.size()));
    }
    widths.insert(static_cast<int>(changed.size()));
  }
  EXPECT_TRUE(widths.count(0));
  EXPECT_TRUE(widths.count(16));
  EXPECT_THROW(FreqMask(spec, 129, rng), Error);
}

TEST(TimeMaskTest, MasksFeaturesAndLabels) {
  MelSpec spec = RandomLog(40, 8, 9);
  LabelSet labels = Labels(2, 40, {{0, 5, 25}, {1, 30, 35}});
  auto [out, lab] = ApplyTimeMask(spec, labels, 10, 10);
  for (Eigen::Index t = 0; t < 40; ++t) {
    const bool masked = t >= 10 && t < 20;
    if (masked) {
      EXPECT_TRUE((out.data.row(t).array() == MaskValue(spec)).all());
      EXPECT_TRUE((lab.strong.col(t).array() == 0.0).all());
    } else {
      EXPECT_EQ(out.data.row(t), spec.data.row(t));
      EXPECT_EQ(lab.strong.col(t), labels.strong.col(t));
    }
  }
  EXPECT_EQ(lab.weak[0], 1.0);
}

TEST(TimeMaskTest, ZeroLengthIdentityAndClamping) {
  MelSpec spec = RandomLog(40, 8, 10);
  LabelSet labels = Labels(1, 40, {{0, 5, 9}});
  AugmentConfig cfg = DisabledAugmentConfig();
  cfg.time_mask_min_frames = 0;
  cfg.time_mask_max_frames = 0;
  Rng rng(1, 2);
  auto [same, same_l] = TimeMask(spec, labels, cfg, rng);
  EXPECT_EQ(same.data, spec.data);
  EXPECT_EQ(same_l.strong, labels.strong);

  cfg.time_mask_min_frames = 100;
  cfg.time_mask_max_frames = 200;
  auto [all, all_l] = TimeMask(spec, labels, cfg, rng);
  EXPECT_TRUE((all.data.array() == MaskValue(spec)).all());
  EXPECT_EQ(all_l.weak[0], 0.0);
}

TEST(TimeMaskTest, WeakRecomputedOnlyForHardLabels) {
  MelSpec spec = RandomLog(40, 8, 11);
  LabelSet hard = Labels(2, 40, {{0, 12, 16}, {1, 0, 40}});
  auto [o1, l1] = ApplyTimeMask(spec, hard, 10, 10);
  EXPECT_EQ(l1.weak[0], 0.0);
  EXPECT_EQ(l1.weak[1], 1.0);

  LabelSet soft = hard;
  soft.strong *= 0.5;
  soft.weak << 0.7, 0.5;
  auto [o2, l2] = ApplyTimeMask(spec, soft, 10, 10);
  EXPECT_EQ(l2.weak[0], 0.7);
  EXPECT_EQ(l2.weak[1], 0.5);
}

TEST(FrameShiftTest, Shifts) {
  MelSpec spec = RandomLog(20, 4, 12);
  LabelSet labels = Labels(1, 20, {{0, 5, 8}});
  auto [s0, l0] = ApplyFrameShift(spec, labels, 0);
  EXPECT_EQ(s0.data, spec.data);
  EXPECT_EQ(l0.strong, labels.strong);

  auto [s3, l3] = ApplyFrameShift(spec, labels, 3);
  EXPECT_EQ(l3.strong, Labels(1, 20, {{0, 8, 11}}).strong);
  for (Eigen::Index t = 0; t < 3; ++t) EXPECT_TRUE((s3.data.row(t).array() == MaskValue(spec)).all());
  for (Eigen::Index t = 3; t < 20; ++t) EXPECT_EQ(s3.data.row(t), spec.data.row(t - 3));

  auto [sn, ln] = ApplyFrameShift(spec, labels, -2);
  EXPECT_EQ(ln.strong, Labels(1, 20, {{0, 3, 6}}).strong);
  for (Eigen::Index t = 18; t < 20; ++t) EXPECT_TRUE((sn.data.row(t).array() == MaskValue(spec)).all());
}

TEST(FrameShiftTest, ShiftingOutRemovesEvent) {
  MelSpec spec = RandomLog(20, 4, 13);
  LabelSet labels = Labels(1, 20, {{0, 0, 1}});
  auto [s, l] = ApplyFrameShift(spec, labels, -19);
  EXPECT_EQ(l.weak[0], 0.0);
  EXPECT_TRUE((l.strong.array() == 0.0).all());
  EXPECT_EQ(s.data.row(0), spec.data.row(19));
}

TEST(FrameShiftTest, RandomShiftWithinRange) {
  MelSpec spec = RandomLog(60, 2, 14);
  LabelSet labels = Labels(1, 60, {{0, 20, 21}});
  Rng rng(4, 4);
  std::set<Eigen::Index> seen;
  for (int trial = 0; trial < 400; ++trial) {
    auto [s, l] = FrameShift(spec, labels, 5, rng);
    Eigen::Index where;
    l.strong.row(0).maxCoeff(&where);
    ASSERT_GE(where, 15);
    ASSERT_LE(where, 25);
    seen.insert(where);
  }
  EXPECT_EQ(seen.size(), 11u);
  EXPECT_THROW(FrameShift(spec, labels, 60, rng), Error);
}

TEST(MixupTest, Endpoints) {
  auto a = std::make_pair(RandomLog(10, 4, 15), Labels(2, 10, {{0, 1, 3}}));
  auto b = std::make_pair(RandomLog(10, 4, 16), Labels(2, 10, {{1, 4, 9}}));
  auto one = ApplyMixup(a, b, 1.0);
  EXPECT_EQ(one.first.data, a.first.data);
  EXPECT_EQ(one.second.strong, a.second.strong);
  EXPECT_EQ(one.second.weak, a.second.weak);

  auto half = ApplyMixup(a, b, 0.5);
  EXPECT_LT((half.first.data - 0.5 * (a.first.data + b.first.data)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(half.second.strong, 0.5 * (a.second.strong + b.second.strong));
  EXPECT_EQ(half.second.weak, 0.5 * (a.second.weak + b.second.weak));
}

TEST(MixupTest, ConvexLabelsAndProbability) {
  auto a = std::make_pair(RandomLog(10, 4, 17), Labels(2, 10, {{0, 1, 3}}));
  auto b = std::make_pair(RandomLog(10, 4, 18), Labels(2, 10, {{1, 4, 9}, {0, 2, 7}}));
  AugmentConfig cfg = DisabledAugmentConfig();
  cfg.mixup_prob = 1.0;
  Rng rng(2, 3);
  for (int trial = 0; trial < 200; ++trial) {
    auto out = Mixup(a, b, cfg, rng);
    ASSERT_GE(out.second.strong.minCoeff(), 0.0);
    ASSERT_LE(out.second.strong.maxCoeff(), 1.0);
  }
  cfg.mixup_prob = 0.0;
  auto same = Mixup(a, b, cfg, rng);
  EXPECT_EQ(same.first.data, a.first.data);

  auto c = std::make_pair(RandomLog(11, 4, 19), Labels(2, 11, {}));
  EXPECT_THROW(ApplyMixup(a, c, 0.5), Error);
  try {
    Mixup(a, c, cfg, rng);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShapeMismatch);
  }
}

TEST(NoiseTest, VanishingNoise) {
  MelSpec spec = RandomLog(50, 16, 20);
  Rng rng(0, 5);
  MelSpec out = AddGaussianNoise(spec, {300.0, 300.0}, rng);
  EXPECT_LT((out.data - spec.data).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(NoiseTest, EmpiricalSnr) {
  MelSpec spec = RandomLinear(1000, 1000, 21);
  Rng rng(0, 6);
  MelSpec out = AddGaussianNoise(spec, {30.0, 30.0}, rng);
  const double signal = spec.data.squaredNorm() / spec.data.size();
  const double noise = (out.data - spec.data).squaredNorm() / spec.data.size();
  EXPECT_NEAR(noise / signal, 1e-3, 1e-4);
}

TEST(NoiseTest, SnrDrawInRange) {
  Rng rng(7, 7);
  for (int i = 0; i < 1000; ++i) {
    const double snr = SampleSnrDb({30.0, 50.0}, rng);
    ASSERT_GE(snr, 30.0);
    ASSERT_LE(snr, 50.0);
  }
}

TEST(NoiseTest, SilentInputRejected) {
  MelSpec lin = RandomLinear(5, 5, 22);
  lin.data.setZero();
  Rng rng(0, 0);
  try {
    AddGaussianNoise(lin, {30.0, 40.0}, rng);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoSignalPower);
  }
  MelSpec log = lin;
  log.domain = SpecDomain::kLogMagnitude;
  log.data.setConstant(std::log(log.log_floor));
  EXPECT_THROW(AddGaussianNoise(log, {30.0, 40.0}, rng), Error);
}

TEST(AugmentConfigTest, Validation) {
  AugmentConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.time_mask_min_frames = 40;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = AugmentConfig{};
  cfg.mixup_prob = 1.5;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = AugmentConfig{};
  cfg.noise_snr_db = std::make_pair(50.0, 30.0);
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = AugmentConfig{};
  cfg.mixup_alpha = 0.0;
  EXPECT_THROW(cfg.Validate(), Error);
}

std::vector<std::pair<MelSpec, LabelSet>> Batch(int n, Eigen::Index frames = 60) {
  std::vector<std::pair<MelSpec, LabelSet>> batch;
  for (int i = 0; i < n; ++i)
    batch.emplace_back(RandomLog(frames, 32, 100 + i),
                       Labels(2, frames, {{i % 2, 5 + i, 20 + i}}));
  return batch;
}

TEST(ViewsTest, DisabledIsIdentity) {
  auto batch = Batch(3);
  Views v = MakeStudentTeacherViews(batch, DisabledAugmentConfig(), Rng(1, 0));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_EQ(v.student[i].data, batch[i].first.data);
    EXPECT_EQ(v.teacher[i].data, batch[i].first.data);
    EXPECT_EQ(v.labels[i].strong, batch[i].second.strong);
  }
}

TEST(ViewsTest, LabelAlteringOnlyGivesEqualViews) {
  auto batch = Batch(4);
  AugmentConfig cfg = DisabledAugmentConfig();
  cfg.time_mask_min_frames = 7;
  cfg.time_mask_max_frames = 30;
  Views v = MakeStudentTeacherViews(batch, cfg, Rng(2, 0));
  for (std::size_t i = 0; i < batch.size(); ++i) EXPECT_EQ(v.student[i].data, v.teacher[i].data);

  cfg.frameshift_max_frames = 10;
  cfg.mixup_prob = 1.0;
  v = MakeStudentTeacherViews(batch, cfg, Rng(2, 0));
  for (std::size_t i = 0; i < batch.size(); ++i) EXPECT_EQ(v.student[i].data, v.teacher[i].data);
}

TEST(ViewsTest, FilterAugmentDiffersPerViewWithinBounds) {
  std::vector<std::pair<MelSpec, LabelSet>> batch;
  for (int i = 0; i < 3; ++i) batch.emplace_back(RandomLinear(30, 64, 200 + i), Labels(1, 30, {{0, 2, 9}}));
  AugmentConfig cfg = DisabledAugmentConfig();
  cfg.filter_aug = FilterAugmentConfig{};
  Views v = MakeStudentTeacherViews(batch, cfg, Rng(3, 0));
  const double lo = std::pow(10.0, -7.5 / 20.0), hi = std::pow(10.0, 6.0 / 20.0);
  bool any_diff = false;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_EQ(v.labels[i].strong, batch[i].second.strong);
    EXPECT_EQ(v.labels[i].weak, batch[i].second.weak);
    any_diff = any_diff || v.student[i].data != v.teacher[i].data;
    for (const MelSpec *view : {&v.student[i], &v.teacher[i]}) {
      Matrix ratio = view->data.cwiseQuotient(batch[i].first.data);
      EXPECT_GE(ratio.minCoeff(), lo - 1e-12);
      EXPECT_LE(ratio.maxCoeff(), hi + 1e-12);
    }
  }
  EXPECT_TRUE(any_diff);
}

TEST(ViewsTest, DeterministicAndPerItemStreams) {
  AugmentConfig cfg = DisabledAugmentConfig();
  cfg.filter_aug = FilterAugmentConfig{};
  cfg.freq_mask_max_bins = 8;
  cfg.noise_snr_db = std::make_pair(30.0, 50.0);
  cfg.time_mask_max_frames = 30;
  cfg.frameshift_max_frames = 10;
  auto batch = Batch(5);
  Views a = MakeStudentTeacherViews(batch, cfg, Rng(4, 0));
  Views b = MakeStudentTeacherViews(batch, cfg, Rng(4, 0));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_EQ(a.student[i].data, b.student[i].data);
    EXPECT_EQ(a.teacher[i].data, b.teacher[i].data);
    EXPECT_EQ(a.labels[i].strong, b.labels[i].strong);
  }
  // Without mixup, item i only depends on its own inputs and index.
  auto shorter = batch;
  shorter.pop_back();
  shorter[1] = Batch(7)[6];
  Views c = MakeStudentTeacherViews(shorter, cfg, Rng(4, 0));
  EXPECT_EQ(c.student[0].data, a.student[0].data);
  EXPECT_EQ(c.teacher[2].data, a.teacher[2].data);
  EXPECT_EQ(c.labels[3].strong, a.labels[3].strong);
}

TEST(ViewsTest, SharedLabelsTrackSharedTransforms) {
  // Label-altering stages move features and labels together: masked frames
  // in the view carry zero labels.
  AugmentConfig cfg = DisabledAugmentConfig();
  cfg.time_mask_min_frames = 10;
  cfg.time_mask_max_frames = 10;
  auto batch = Batch(3);
  Views v = MakeStudentTeacherViews(batch, cfg, Rng(5, 0));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    int masked = 0;
    for (Eigen::Index t = 0; t < v.student[i].num_frames(); ++t) {
      if ((v.student[i].data.row(t).array() == MaskValue(v.student[i])).all()) {
        ++masked;
        EXPECT_TRUE((v.labels[i].strong.col(t).array() == 0.0).all());
      }
    }
    EXPECT_EQ(masked, 10);
  }
}

TEST(ViewsTest, Errors) {
  EXPECT_THROW(MakeStudentTeacherViews({}, AugmentConfig{}, Rng(0, 0)), Error);
  auto batch = Batch(2);
  batch[1].second = Labels(2, 59, {});
  EXPECT_THROW(MakeStudentTeacherViews(batch, AugmentConfig{}, Rng(0, 0)), Error);
}

}  // namespace
}  // namespace sedkit

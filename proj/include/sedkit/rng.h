// include/sedkit/rng.h

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

#ifndef SEDKIT_RNG_H_
#define SEDKIT_RNG_H_

#include <cstdint>
#include <random>

namespace sedkit {

/// Seeded random stream. Two Rng objects built from the same (seed, stream_id)
/// produce the same draws on every platform: the engine is std::mt19937_64
/// (fully specified by the standard) and the distributions come from
/// Boost.Random, whose algorithms do not vary by standard library.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Independent child stream; does not advance this stream.
  Rng Fork(std::uint64_t tag) const;

  /// Uniform integer in [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  /// Uniform real in [lo, hi); returns lo when lo == hi.
  double Uniform(double lo, double hi);
  double Normal(double mean, double stddev);
  double Beta(double alpha, double beta);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive stream ids.
std::uint64_t MixBits(std::uint64_t x);

}  // namespace sedkit

#endif  // SEDKIT_RNG_H_

// include/sedkit/parallel.h

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

#ifndef SEDKIT_PARALLEL_H_
#define SEDKIT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace sedkit {

/// Worker count from SEDKIT_THREADS (0 or unset = hardware concurrency).
int ThreadCount();

/// Runs fn(i) for i in [0, n) on up to ThreadCount() threads. Callers write
/// results into slot i, so output never depends on scheduling. The first
/// exception thrown by any fn is rethrown after all workers join.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)> &fn);

}  // namespace sedkit

#endif  // SEDKIT_PARALLEL_H_

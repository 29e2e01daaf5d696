// Copyright 2026 The mobcache Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Synthetic inputs: a grid-shaped mobility chain standing in for a measured
// contact trace, a trace sampler, and random small instances for oracles.

#ifndef MOBCACHE_SYNTHETIC_H_
#define MOBCACHE_SYNTHETIC_H_

#include <cstdint>

#include "mobcache/allocation.h"
#include "mobcache/model.h"
#include "mobcache/rng.h"

namespace mobcache {

// Helpers sit row-major on a grid ceil(sqrt(n)) columns wide. A user stays
// with probability `locality` and otherwise moves to one of the 4-neighbours,
// split by seeded random weights. The initial distribution is also a seeded
// random weighting. An isolated helper (n == 1) is a pure self-loop.
MobilityModel GridMobilityModel(std::size_t n, double locality,
                                std::uint64_t seed);

// One contact per slot for `num_slots` slots per user, at the middle of each
// slot. User u's walk uses stream StreamSeed(seed, u).
TraceLog SampleTrace(const MobilityModel& model, std::size_t num_users,
                     int num_slots, double slot_duration_s,
                     std::uint64_t seed);

struct RandomInstanceSpec {
  std::size_t max_helpers = 3;
  int max_deadline = 3;
  std::size_t max_files = 3;
  // Chance that any single transition / request entry is forced to zero.
  double zero_probability = 0.2;
  std::int64_t max_file_size = 20;
};

Instance RandomInstance(const RandomInstanceSpec& spec, Rng& rng);

// Uniform fractions per (helper, file), scaled down per helper until the
// cache capacity holds.
Allocation RandomFeasibleAllocation(const HelperSet& helpers,
                                    const Catalog& catalog, Rng& rng);

}  // namespace mobcache

#endif  // MOBCACHE_SYNTHETIC_H_

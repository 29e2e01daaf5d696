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

// Per-work-item routines shared by the serial and OpenMP kernels.

#ifndef MOBCACHE_SRC_KERNEL_COMMON_H_
#define MOBCACHE_SRC_KERNEL_COMMON_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mobcache/allocation.h"
#include "mobcache/model.h"
#include "mobcache/walks.h"

namespace mobcache::kernels::internal {

// (helper, visits) for each distinct helper of the walk, ascending by helper.
using VisitCounts = std::vector<std::pair<std::size_t, int>>;

void CountVisits(std::span<const std::size_t> steps, VisitCounts& out);

// Request mass of the walk's first helper that the helpers on the walk cannot
// deliver in time.
double FailMass(std::span<const std::size_t> steps,
                const RequestModel& requests, const DownloadSchedule& schedule,
                VisitCounts& scratch);

// Adds prob * P(i | V_1) to out(h, i, k) for every k <= visits of h.
void AddContacts(std::span<const std::size_t> steps, double prob,
                 const RequestModel& requests, ContactValueTable& out,
                 VisitCounts& scratch);

// Fills out(target, ., .) from first-passage and return-time probabilities.
// `first_passage` must hold (d - 1) * n entries.
void ContactValuesForHelper(const MobilityModel& model,
                            const RequestModel& requests, std::size_t target,
                            std::span<double> first_passage,
                            ContactValueTable& out);

struct SamplingTables {
  SamplingTables(const MobilityModel& model, const RequestModel& requests);

  std::vector<double> init;
  std::vector<std::vector<double>> trans;
  std::vector<std::vector<double>> requests;
};

// Failed samples among samples [block * kMonteCarloBlock, +count).
std::int64_t McBlock(const SamplingTables& tables,
                     const DownloadSchedule& schedule, std::int64_t block,
                     std::int64_t count, std::uint64_t seed);

inline std::int64_t NumBlocks(std::int64_t samples) {
  return (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
}

inline std::int64_t BlockSize(std::int64_t block, std::int64_t samples) {
  return std::min(kMonteCarloBlock, samples - block * kMonteCarloBlock);
}

}  // namespace mobcache::kernels::internal

#endif  // MOBCACHE_SRC_KERNEL_COMMON_H_

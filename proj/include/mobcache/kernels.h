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

// Hot loops of the library in two flavours: a plain serial reference and an
// OpenMP version. The public entry points call the OpenMP versions; the
// serial ones stay as test references and benchmark baselines.
//
// Parallel reductions are taken per work item (a walk prefix, a helper, or a
// sample block) and combined in item order, so results do not depend on the
// number of threads. They may differ from the serial reference in the last
// few ulps because the summation order differs.

#ifndef MOBCACHE_KERNELS_H_
#define MOBCACHE_KERNELS_H_

#include <cstdint>
#include <span>

#include "mobcache/allocation.h"
#include "mobcache/model.h"
#include "mobcache/walks.h"

namespace mobcache::kernels {

// r_{i,j}(l) for all i, j and l = 1..max_steps, laid out [l-1][i][j].
void FirstPassageSerial(const MobilityModel& model, int max_steps,
                        std::span<double> out);
void FirstPassageParallel(const MobilityModel& model, int max_steps,
                          std::span<double> out);

void ContactValuesSerial(const MobilityModel& model,
                         const RequestModel& requests, ContactValueTable& out);
void ContactValuesParallel(const MobilityModel& model,
                           const RequestModel& requests,
                           ContactValueTable& out);

void ContactOracleSerial(const MobilityModel& model,
                         const RequestModel& requests, ContactValueTable& out);
void ContactOracleParallel(const MobilityModel& model,
                           const RequestModel& requests,
                           ContactValueTable& out);

double FailureExactSerial(const MobilityModel& model,
                          const RequestModel& requests,
                          const DownloadSchedule& schedule);
double FailureExactParallel(const MobilityModel& model,
                            const RequestModel& requests,
                            const DownloadSchedule& schedule);

// Number of failed samples out of `samples`.
std::int64_t FailureMcSerial(const MobilityModel& model,
                             const RequestModel& requests,
                             const DownloadSchedule& schedule,
                             std::int64_t samples, std::uint64_t seed);
std::int64_t FailureMcParallel(const MobilityModel& model,
                               const RequestModel& requests,
                               const DownloadSchedule& schedule,
                               std::int64_t samples, std::uint64_t seed);

}  // namespace mobcache::kernels

#endif  // MOBCACHE_KERNELS_H_

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

// Serial reference kernels.

#include <algorithm>
#include <limits>
#include <vector>

#include "kernel_common.h"
#include "mobcache/kernels.h"

namespace mobcache::kernels {

void FirstPassageSerial(const MobilityModel& model, int max_steps,
                        std::span<double> out) {
  const std::size_t n = model.num_helpers();
  std::vector<double> column(static_cast<std::size_t>(max_steps) * n);
  for (std::size_t target = 0; target < n; ++target) {
    FirstPassageToTarget(model, target, max_steps, column);
    for (int l = 1; l <= max_steps; ++l) {
      for (std::size_t from = 0; from < n; ++from) {
        out[((static_cast<std::size_t>(l) - 1) * n + from) * n + target] =
            column[(static_cast<std::size_t>(l) - 1) * n + from];
      }
    }
  }
}

void ContactValuesSerial(const MobilityModel& model,
                         const RequestModel& requests,
                         ContactValueTable& out) {
  const std::size_t n = model.num_helpers();
  std::vector<double> scratch(static_cast<std::size_t>(out.deadline() - 1) *
                              n);
  for (std::size_t h = 0; h < n; ++h) {
    internal::ContactValuesForHelper(model, requests, h, scratch, out);
  }
}

void ContactOracleSerial(const MobilityModel& model,
                         const RequestModel& requests,
                         ContactValueTable& out) {
  std::fill(out.raw().begin(), out.raw().end(), 0.0);
  internal::VisitCounts scratch;
  ForEachWalk(
      model, out.deadline(),
      [&](std::span<const std::size_t> steps, double p) {
        internal::AddContacts(steps, p, requests, out, scratch);
      },
      std::numeric_limits<std::uint64_t>::max());
}

double FailureExactSerial(const MobilityModel& model,
                          const RequestModel& requests,
                          const DownloadSchedule& schedule) {
  double total = 0.0;
  internal::VisitCounts scratch;
  ForEachWalk(
      model, schedule.deadline(),
      [&](std::span<const std::size_t> steps, double p) {
        total += p * internal::FailMass(steps, requests, schedule, scratch);
      },
      std::numeric_limits<std::uint64_t>::max());
  return total;
}

std::int64_t FailureMcSerial(const MobilityModel& model,
                             const RequestModel& requests,
                             const DownloadSchedule& schedule,
                             std::int64_t samples, std::uint64_t seed) {
  const internal::SamplingTables tables(model, requests);
  std::int64_t failed = 0;
  for (std::int64_t b = 0; b < internal::NumBlocks(samples); ++b) {
    failed += internal::McBlock(tables, schedule, b,
                                internal::BlockSize(b, samples), seed);
  }
  return failed;
}

}  // namespace mobcache::kernels

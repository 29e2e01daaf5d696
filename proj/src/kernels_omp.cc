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

// OpenMP kernels. Every loop below iterates over independent work items and
// combines their results in item order.

#include <algorithm>
#include <vector>

#include "kernel_common.h"
#include "mobcache/kernels.h"

namespace mobcache::kernels {

void FirstPassageParallel(const MobilityModel& model, int max_steps,
                          std::span<double> out) {
  const auto n = static_cast<std::int64_t>(model.num_helpers());
  const auto stride = static_cast<std::size_t>(n);
#pragma omp parallel
  {
    std::vector<double> column(static_cast<std::size_t>(max_steps) * stride);
#pragma omp for schedule(dynamic)
    for (std::int64_t target = 0; target < n; ++target) {
      const auto t = static_cast<std::size_t>(target);
      FirstPassageToTarget(model, t, max_steps, column);
      for (int l = 1; l <= max_steps; ++l) {
        const auto base = static_cast<std::size_t>(l - 1) * stride;
        for (std::size_t from = 0; from < stride; ++from) {
          out[(base + from) * stride + t] = column[base + from];
        }
      }
    }
  }
}

void ContactValuesParallel(const MobilityModel& model,
                           const RequestModel& requests,
                           ContactValueTable& out) {
  const auto n = static_cast<std::int64_t>(model.num_helpers());
  // Each helper writes only its own slice of `out`.
#pragma omp parallel
  {
    std::vector<double> scratch(
        static_cast<std::size_t>(out.deadline() - 1) *
        static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic)
    for (std::int64_t h = 0; h < n; ++h) {
      internal::ContactValuesForHelper(model, requests,
                                       static_cast<std::size_t>(h), scratch,
                                       out);
    }
  }
}

void ContactOracleParallel(const MobilityModel& model,
                           const RequestModel& requests,
                           ContactValueTable& out) {
  std::fill(out.raw().begin(), out.raw().end(), 0.0);
  const auto prefixes = WalkPrefixes(model, out.deadline());
  const auto items = static_cast<std::int64_t>(prefixes.size());
  const int d = out.deadline();
#pragma omp parallel
  {
    ContactValueTable local(out.num_helpers(), out.num_files(), d);
    internal::VisitCounts scratch;
    std::vector<std::size_t> steps;
#pragma omp for ordered schedule(static, 1)
    for (std::int64_t item = 0; item < items; ++item) {
      std::fill(local.raw().begin(), local.raw().end(), 0.0);
      const auto& prefix = prefixes[static_cast<std::size_t>(item)];
      steps = prefix.walk.steps;
      ExtendWalks(model, d, steps, prefix.probability,
                  [&](std::span<const std::size_t> walk, double p) {
                    internal::AddContacts(walk, p, requests, local, scratch);
                  });
#pragma omp ordered
      {
        auto dst = out.raw();
        const auto src = local.raw();
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
      }
    }
  }
}

double FailureExactParallel(const MobilityModel& model,
                            const RequestModel& requests,
                            const DownloadSchedule& schedule) {
  const auto prefixes = WalkPrefixes(model, schedule.deadline());
  const auto items = static_cast<std::int64_t>(prefixes.size());
  std::vector<double> partial(prefixes.size(), 0.0);
  const int d = schedule.deadline();
#pragma omp parallel
  {
    internal::VisitCounts scratch;
    std::vector<std::size_t> steps;
#pragma omp for schedule(dynamic)
    for (std::int64_t item = 0; item < items; ++item) {
      const auto& prefix = prefixes[static_cast<std::size_t>(item)];
      steps = prefix.walk.steps;
      double acc = 0.0;
      ExtendWalks(model, d, steps, prefix.probability,
                  [&](std::span<const std::size_t> walk, double p) {
                    acc += p * internal::FailMass(walk, requests, schedule,
                                                  scratch);
                  });
      partial[static_cast<std::size_t>(item)] = acc;
    }
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

std::int64_t FailureMcParallel(const MobilityModel& model,
                               const RequestModel& requests,
                               const DownloadSchedule& schedule,
                               std::int64_t samples, std::uint64_t seed) {
  const internal::SamplingTables tables(model, requests);
  const std::int64_t blocks = internal::NumBlocks(samples);
  std::int64_t failed = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failed)
  for (std::int64_t b = 0; b < blocks; ++b) {
    failed += internal::McBlock(tables, schedule, b,
                                internal::BlockSize(b, samples), seed);
  }
  return failed;
}

}  // namespace mobcache::kernels

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

#include "mobcache/allocation.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mobcache/error.h"
#include "mobcache/kernels.h"

namespace mobcache {

Feasibility CheckFeasible(const Allocation& alloc, const HelperSet& helpers,
                          const Catalog& catalog) {
  if (alloc.num_helpers() != helpers.size() ||
      alloc.num_files() != catalog.num_files()) {
    Fail(ErrorCode::kDimensionMismatch,
         "allocation is " + std::to_string(alloc.num_helpers()) + "x" +
             std::to_string(alloc.num_files()) + ", instance is " +
             std::to_string(helpers.size()) + "x" +
             std::to_string(catalog.num_files()));
  }
  Feasibility out;
  out.feasible = true;
  out.slack.resize(helpers.size());
  for (std::size_t h = 0; h < helpers.size(); ++h) {
    double stored = 0.0;
    for (std::size_t i = 0; i < catalog.num_files(); ++i) {
      const double x = alloc(h, i);
      if (!(x >= 0.0 && x <= 1.0)) {
        if (out.feasible) {
          out.reason = "x(" + std::to_string(h) + ", " + std::to_string(i) +
                       ") = " + std::to_string(x) + " outside [0, 1]";
        }
        out.feasible = false;
      }
      stored += static_cast<double>(catalog.size(i)) * x;
    }
    out.slack[h] = static_cast<double>(helpers.capacity(h)) - stored;
    if (out.slack[h] < -kCapacityTolerance) {
      if (out.feasible) {
        out.reason = "helper " + std::to_string(h) + " stores " +
                     std::to_string(stored) + " bytes, capacity " +
                     std::to_string(helpers.capacity(h));
      }
      out.feasible = false;
    }
  }
  return out;
}

DownloadSchedule::DownloadSchedule(std::size_t num_helpers,
                                   std::size_t num_files, int deadline,
                                   std::vector<double> u)
    : n_(num_helpers), files_(num_files), d_(deadline), u_(std::move(u)) {
  if (deadline < 1) Fail(ErrorCode::kInvalidParameter, "deadline must be >= 1");
  if (u_.size() != n_ * files_ * static_cast<std::size_t>(d_)) {
    Fail(ErrorCode::kDimensionMismatch, "schedule size does not match shape");
  }
  cumulative_.resize(u_.size());
  for (std::size_t base = 0; base < u_.size(); base += d_) {
    double acc = 0.0;
    for (int k = 0; k < d_; ++k) {
      const double v = u_[base + k];
      if (!std::isfinite(v) || v < 0.0) {
        Fail(ErrorCode::kInvalidInput, "schedule entries must be >= 0");
      }
      cumulative_[base + k] = acc += v;
    }
  }
}

DownloadSchedule ComputeDownloadSchedule(const Allocation& alloc,
                                         const HelperSet& helpers,
                                         const Catalog& catalog, int d) {
  if (alloc.num_helpers() != helpers.size() ||
      alloc.num_files() != catalog.num_files()) {
    Fail(ErrorCode::kDimensionMismatch,
         "allocation shape does not match the instance");
  }
  const std::size_t n = helpers.size(), files = catalog.num_files();
  std::vector<double> u(n * files * static_cast<std::size_t>(d));
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < files; ++i) {
      const double per_slot = static_cast<double>(helpers.budget(h)) /
                              static_cast<double>(catalog.size(i));
      double left = std::max(alloc(h, i), 0.0);
      for (int k = 0; k < d; ++k) {
        const double take = std::min(left, per_slot);
        u[(h * files + i) * d + k] = take;
        left -= take;
      }
    }
  }
  return DownloadSchedule(n, files, d, std::move(u));
}

std::string_view EvalMethodName(EvalMethod method) {
  return method == EvalMethod::kExact ? "exact" : "mc";
}

EvalReport FailureProbabilityExact(const Allocation& alloc,
                                   const Instance& instance,
                                   std::uint64_t cap) {
  instance.Validate();
  CheckEnumerable(instance.num_helpers(), instance.deadline, cap);
  const auto schedule = ComputeDownloadSchedule(
      alloc, instance.helpers, instance.catalog, instance.deadline);
  const double p = kernels::FailureExactParallel(instance.mobility,
                                                 instance.requests, schedule);
  return EvalReport{std::clamp(p, 0.0, 1.0), EvalMethod::kExact, 0, 0.0};
}

EvalReport FailureProbabilityMc(const Allocation& alloc,
                                const Instance& instance, std::int64_t samples,
                                std::uint64_t seed) {
  if (samples < 1) Fail(ErrorCode::kInvalidParameter, "need >= 1 sample");
  instance.Validate();
  const auto schedule = ComputeDownloadSchedule(
      alloc, instance.helpers, instance.catalog, instance.deadline);
  const std::int64_t failed = kernels::FailureMcParallel(
      instance.mobility, instance.requests, schedule, samples, seed);
  const double p = static_cast<double>(failed) / static_cast<double>(samples);
  const double half =
      kZ99 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return EvalReport{p, EvalMethod::kMonteCarlo, samples, half};
}

}  // namespace mobcache

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

#include "mobcache/walks.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mobcache/error.h"
#include "mobcache/kernels.h"

namespace mobcache {

std::uint64_t CountWalks(std::size_t n, int d) {
  std::uint64_t count = 1;
  for (int t = 0; t < d; ++t) {
    if (n != 0 && count > std::numeric_limits<std::uint64_t>::max() / n) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= n;
  }
  return count;
}

void CheckEnumerable(std::size_t n, int d, std::uint64_t cap) {
  if (d < 1) Fail(ErrorCode::kInvalidParameter, "deadline must be >= 1");
  const std::uint64_t count = CountWalks(n, d);
  if (count > cap) {
    Fail(ErrorCode::kInstanceTooLarge,
         std::to_string(n) + "^" + std::to_string(d) +
             " walks exceed the enumeration cap of " + std::to_string(cap) +
             "; use the Monte Carlo evaluator or the approximate allocator");
  }
}

double WalkProbability(const MobilityModel& model,
                       std::span<const std::size_t> steps) {
  if (steps.empty()) return 1.0;
  double p = model.init(steps[0]);
  for (std::size_t t = 1; t < steps.size(); ++t) {
    p *= model.trans(steps[t - 1], steps[t]);
  }
  return p;
}

std::vector<WeightedWalk> EnumerateWalks(const MobilityModel& model, int d,
                                         std::uint64_t cap) {
  std::vector<WeightedWalk> walks;
  ForEachWalk(
      model, d,
      [&walks](std::span<const std::size_t> steps, double p) {
        walks.push_back(WeightedWalk{Walk{{steps.begin(), steps.end()}}, p});
      },
      cap);
  return walks;
}

std::vector<WeightedWalk> WalkPrefixes(const MobilityModel& model, int d) {
  return EnumerateWalks(model, std::min(d, 2),
                        std::numeric_limits<std::uint64_t>::max());
}

void FirstPassageToTarget(const MobilityModel& model, std::size_t target,
                          int max_steps, std::span<double> out) {
  const std::size_t n = model.num_helpers();
  if (max_steps < 1) return;
  for (std::size_t i = 0; i < n; ++i) out[i] = model.trans(i, target);
  // r_{i,j}(l) = sum_{k != j} M(i, k) r_{k,j}(l-1): the first step must not
  // land on the target.
  for (int l = 2; l <= max_steps; ++l) {
    const auto prev = out.subspan(static_cast<std::size_t>(l - 2) * n, n);
    auto cur = out.subspan(static_cast<std::size_t>(l - 1) * n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = model.trans().row(i);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != target) acc += row[k] * prev[k];
      }
      cur[i] = acc;
    }
  }
}

FirstPassageTable::FirstPassageTable(const MobilityModel& model, int max_steps)
    : n_(model.num_helpers()), max_steps_(max_steps) {
  if (max_steps < 1) Fail(ErrorCode::kInvalidParameter, "need >= 1 step");
  table_.assign(static_cast<std::size_t>(max_steps) * n_ * n_, 0.0);
  kernels::FirstPassageParallel(model, max_steps, table_);
}

double FirstPassage(const MobilityModel& model, std::size_t from,
                    std::size_t to, int steps) {
  return FirstPassageTable(model, steps)(from, to, steps);
}

ContactValueTable::ContactValueTable(std::size_t num_helpers,
                                     std::size_t num_files, int deadline)
    : n_(num_helpers), files_(num_files), d_(deadline) {
  if (deadline < 1) Fail(ErrorCode::kInvalidParameter, "deadline must be >= 1");
  values_.assign(n_ * files_ * static_cast<std::size_t>(d_), 0.0);
}

double ContactValueTable::MaxAbsDiff(const ContactValueTable& other) const {
  if (other.n_ != n_ || other.files_ != files_ || other.d_ != d_) {
    Fail(ErrorCode::kDimensionMismatch, "contact value tables differ in shape");
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    worst = std::max(worst, std::abs(values_[j] - other.values_[j]));
  }
  return worst;
}

namespace {

void CheckShapes(const MobilityModel& model, const RequestModel& requests) {
  if (requests.num_helpers() != model.num_helpers()) {
    Fail(ErrorCode::kDimensionMismatch,
         "request model and mobility model disagree on the helper count");
  }
}

}  // namespace

ContactValueTable ContactValues(const MobilityModel& model,
                                const RequestModel& requests, int d) {
  CheckShapes(model, requests);
  ContactValueTable table(model.num_helpers(), requests.num_files(), d);
  kernels::ContactValuesParallel(model, requests, table);
  return table;
}

ContactValueTable ContactValueOracle(const MobilityModel& model,
                                     const RequestModel& requests, int d,
                                     std::uint64_t cap) {
  CheckShapes(model, requests);
  CheckEnumerable(model.num_helpers(), d, cap);
  ContactValueTable table(model.num_helpers(), requests.num_files(), d);
  kernels::ContactOracleParallel(model, requests, table);
  return table;
}

}  // namespace mobcache

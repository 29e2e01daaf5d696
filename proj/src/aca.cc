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

#include "mobcache/aca.h"

#include <algorithm>
#include <numeric>

#include "mobcache/error.h"

namespace mobcache {

KnapsackInstance BuildKnapsack(std::size_t h, const HelperSet& helpers,
                               const Catalog& catalog,
                               const ContactValueTable& values) {
  KnapsackInstance out;
  out.capacity = static_cast<double>(helpers.capacity(h));
  out.num_files = catalog.num_files();
  for (std::size_t i = 0; i < catalog.num_files(); ++i) {
    const auto weight = static_cast<double>(catalog.size(i));
    const double cap =
        std::min(static_cast<double>(helpers.budget(h)) / weight, 1.0);
    for (int k = 1; k <= values.deadline(); ++k) {
      out.materials.push_back({i, k, values(h, i, k), weight, cap});
    }
  }
  return out;
}

KnapsackSolution SolveKnapsackGreedy(const KnapsackInstance& instance) {
  const auto& mats = instance.materials;
  std::vector<std::size_t> order(mats.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ra = mats[a].value / mats[a].weight;
    const double rb = mats[b].value / mats[b].weight;
    if (ra != rb) return ra > rb;
    if (mats[a].contact != mats[b].contact) {
      return mats[a].contact < mats[b].contact;
    }
    return mats[a].file < mats[b].file;
  });

  KnapsackSolution out;
  out.placed.assign(mats.size(), 0.0);
  std::vector<double> file_used(instance.num_files, 0.0);
  double room = instance.capacity;
  for (std::size_t j : order) {
    if (room <= 0.0) break;
    const auto& mat = mats[j];
    if (mat.value <= 0.0) continue;
    const double amount = std::min({mat.fraction_cap,
                                    1.0 - file_used[mat.file],
                                    room / mat.weight});
    if (amount <= 0.0) continue;
    out.placed[j] = amount;
    file_used[mat.file] += amount;
    room -= amount * mat.weight;
    out.objective += amount * mat.value;
  }
  return out;
}

KnapsackLpResult KnapsackLpOracle(const KnapsackInstance& instance) {
  LpProblem lp;
  std::vector<LpRow> per_file(instance.num_files);
  LpRow capacity{{}, RowSense::kLessEqual, instance.capacity};
  for (const auto& mat : instance.materials) {
    const std::size_t col = lp.AddVariable(-mat.value, 0.0, mat.fraction_cap);
    per_file[mat.file].terms.emplace_back(col, 1.0);
    capacity.terms.emplace_back(col, mat.weight);
  }
  for (auto& row : per_file) {
    if (row.terms.empty()) continue;
    row.sense = RowSense::kLessEqual;
    row.rhs = 1.0;
    lp.AddRow(std::move(row));
  }
  if (!capacity.terms.empty()) lp.AddRow(std::move(capacity));
  const LpSolution sol = SolveLp(lp);
  return {sol.status, sol.status == LpStatus::kOptimal ? -sol.objective_value
                                                        : 0.0};
}

double ExpectedWeight(const DownloadSchedule& schedule,
                      const ContactValueTable& values) {
  if (schedule.num_helpers() != values.num_helpers() ||
      schedule.num_files() != values.num_files() ||
      schedule.deadline() != values.deadline()) {
    Fail(ErrorCode::kDimensionMismatch,
         "schedule and contact value table differ in shape");
  }
  double total = 0.0;
  for (std::size_t h = 0; h < schedule.num_helpers(); ++h) {
    for (std::size_t i = 0; i < schedule.num_files(); ++i) {
      for (int k = 1; k <= schedule.deadline(); ++k) {
        total += values(h, i, k) * schedule(h, i, k);
      }
    }
  }
  return total;
}

Allocation AcaAllocate(const HelperSet& helpers, const Catalog& catalog,
                       const ContactValueTable& values) {
  if (values.num_helpers() != helpers.size() ||
      values.num_files() != catalog.num_files()) {
    Fail(ErrorCode::kDimensionMismatch,
         "contact value table does not match the instance");
  }
  Allocation alloc(helpers.size(), catalog.num_files());
  const auto n = static_cast<std::int64_t>(helpers.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t hh = 0; hh < n; ++hh) {
    const auto h = static_cast<std::size_t>(hh);
    const auto knapsack = BuildKnapsack(h, helpers, catalog, values);
    const auto sol = SolveKnapsackGreedy(knapsack);
    for (std::size_t j = 0; j < sol.placed.size(); ++j) {
      alloc.at(h, knapsack.materials[j].file) += sol.placed[j];
    }
    for (std::size_t i = 0; i < catalog.num_files(); ++i) {
      alloc.at(h, i) = std::min(alloc(h, i), 1.0);
    }
  }
  return alloc;
}

Allocation AcaAllocate(const Instance& instance) {
  instance.Validate();
  const auto values = ContactValues(instance.mobility, instance.requests,
                                    instance.deadline);
  return AcaAllocate(instance.helpers, instance.catalog, values);
}

Allocation HuaAllocate(const HelperSet& helpers, const Catalog& catalog,
                       const RequestModel& requests) {
  if (requests.num_helpers() != helpers.size() ||
      requests.num_files() != catalog.num_files()) {
    Fail(ErrorCode::kDimensionMismatch,
         "request model does not match the instance");
  }
  Allocation alloc(helpers.size(), catalog.num_files());
  std::vector<std::size_t> order(catalog.num_files());
  for (std::size_t h = 0; h < helpers.size(); ++h) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return requests.prob(h, a) > requests.prob(h, b);
                     });
    std::int64_t room = helpers.capacity(h);
    for (std::size_t i : order) {
      if (catalog.size(i) > room) break;
      alloc.at(h, i) = 1.0;
      room -= catalog.size(i);
    }
  }
  return alloc;
}

}  // namespace mobcache

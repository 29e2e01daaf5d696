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

// Approximate coded allocation (ACA) and the uncoded popularity baseline
// (HUA).
//
// ACA maximizes the expected downloaded fraction sum_{h,i,k} P[u(h,i,k)] *
// u(h,i,k) over feasible schedules. The objective and constraints separate
// by helper, and each helper's piece is a fractional knapsack: one material
// per (file i, contact k) worth P[u(h,i,k)] per unit, weighing |O_i| bytes,
// of which at most min(b_h/|O_i|, 1) may be packed, with at most one whole
// copy of each file across its k materials. Sorting by value per byte and
// packing greedily solves it exactly.

#ifndef MOBCACHE_ACA_H_
#define MOBCACHE_ACA_H_

#include <vector>

#include "mobcache/allocation.h"
#include "mobcache/lp.h"
#include "mobcache/model.h"
#include "mobcache/walks.h"

namespace mobcache {

struct KnapsackMaterial {
  std::size_t file = 0;
  int contact = 1;            // k, 1-based
  double value = 0.0;         // per unit fraction
  double weight = 0.0;        // bytes per unit fraction, |O_i|
  double fraction_cap = 1.0;  // min(b_h / |O_i|, 1)
};

struct KnapsackInstance {
  double capacity = 0.0;  // bytes
  std::size_t num_files = 0;
  std::vector<KnapsackMaterial> materials;
};

// Materials of helper h, ordered by (file, contact).
KnapsackInstance BuildKnapsack(std::size_t h, const HelperSet& helpers,
                               const Catalog& catalog,
                               const ContactValueTable& values);

struct KnapsackSolution {
  std::vector<double> placed;  // fraction per material, same order
  double objective = 0.0;
};

// Greedy by value per byte; ties go to the lower contact index, then the
// lower file index. Materials without value are never packed.
KnapsackSolution SolveKnapsackGreedy(const KnapsackInstance& instance);

struct KnapsackLpResult {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
};

// The same subproblem as an explicit LP, solved by SolveLp.
KnapsackLpResult KnapsackLpOracle(const KnapsackInstance& instance);

// sum_{h,i,k} values(h,i,k) * u(h,i,k).
double ExpectedWeight(const DownloadSchedule& schedule,
                      const ContactValueTable& values);

// Per-helper greedy knapsacks; helpers are solved in parallel.
Allocation AcaAllocate(const HelperSet& helpers, const Catalog& catalog,
                       const ContactValueTable& values);

// Builds the contact value table for `instance` first.
Allocation AcaAllocate(const Instance& instance);

// Each helper stores whole copies of its locally most popular files (ties to
// the lower index) until the next one does not fit.
Allocation HuaAllocate(const HelperSet& helpers, const Catalog& catalog,
                       const RequestModel& requests);

}  // namespace mobcache

#endif  // MOBCACHE_ACA_H_

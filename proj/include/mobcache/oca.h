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

// Optimal coded allocation (OCA): the allocation problem written as a
// mixed-integer program over every walk and solved by branch and bound on
// LP relaxations.
//
//   minimize   sum_v P(v) sum_i P(i | V_1) (1 - T(i, v))
//   subject to sum_i |O_i| x(h, i) <= |C_h|                    per helper
//              0 <= x(h, i) <= 1
//              0 <= u(h, i, k) <= b_h / |O_i|                  k = 1..d
//              sum_k u(h, i, k) <= x(h, i)
//              sum_{h in v} sum_{k <= visits of h} u(h,i,k) >= T(i, v)
//              T(i, v) in {0, 1}
//
// T(i, v) columns whose objective coefficient is zero are not created, and a
// file with no T column gets no x or u columns either.

#ifndef MOBCACHE_OCA_H_
#define MOBCACHE_OCA_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "mobcache/allocation.h"
#include "mobcache/lp.h"
#include "mobcache/model.h"
#include "mobcache/walks.h"

namespace mobcache {

struct MipProblem {
  static constexpr std::int64_t kAbsent = -1;

  LpProblem lp;  // minimizes -sum coef * T; add objective_constant
  double objective_constant = 0.0;
  std::vector<std::size_t> binary_vars;

  std::size_t num_helpers = 0;
  std::size_t num_files = 0;
  int deadline = 0;
  std::vector<WeightedWalk> walks;  // non-zero walks, lexicographic
  // Walks with identical visit counts share one class. Without merging every
  // walk is its own class.
  std::vector<std::size_t> walk_class;
  std::size_t num_classes = 0;

  // LP column of each model variable, or kAbsent when pruned.
  std::vector<std::int64_t> x_col;  // [h * files + i]
  std::vector<std::int64_t> u_col;  // [(h * files + i) * d + k - 1]
  std::vector<std::int64_t> t_col;  // [i * num_classes + class]

  // |O| * (#walks + n d + n): the column count before any pruning.
  std::uint64_t unpruned_variable_count = 0;

  std::int64_t x(std::size_t h, std::size_t i) const {
    return x_col[h * num_files + i];
  }
  std::int64_t u(std::size_t h, std::size_t i, int k) const {
    return u_col[(h * num_files + i) * static_cast<std::size_t>(deadline) +
                 static_cast<std::size_t>(k - 1)];
  }
  std::int64_t t(std::size_t i, std::size_t cls) const {
    return t_col[i * num_classes + cls];
  }

  // Maps an LP point back to an allocation, clamped into [0, 1].
  Allocation ExtractAllocation(const std::vector<double>& values) const;
};

struct BuildMipOptions {
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  // One T per (file, multiset of visited helpers) instead of per walk. Walks
  // with equal visit counts always share feasibility, so the optimum is
  // unchanged while the program shrinks.
  bool merge_equivalent_walks = false;
};

MipProblem BuildMip(const Instance& instance,
                    const BuildMipOptions& options = {});

struct BnbOptions {
  double integrality_tol = 1e-6;
  double objective_gap_tol = 1e-9;
  std::int64_t node_limit = 100'000;
  // Seeds the incumbent; its exact failure probability is the first upper
  // bound. Without it the incumbent starts as the empty allocation.
  std::optional<Allocation> warm_start;
  LpOptions lp;
};

struct BnbResult {
  Allocation allocation;
  double objective = 1.0;    // exact failure probability of `allocation`
  double lower_bound = 0.0;  // proven lower bound on the optimum
  double gap = 0.0;          // objective - lower_bound, >= 0
  double root_bound = 0.0;   // LP relaxation value at the root
  std::int64_t nodes = 0;
  bool node_limit_hit = false;
};

// Best-bound-first branch and bound. Every node's LP point is also rounded
// to an allocation and evaluated exactly, which can only improve the
// incumbent. Throws kInstanceTooLarge through the exact evaluator.
BnbResult SolveBranchAndBound(const MipProblem& mip, const Instance& instance,
                              const BnbOptions& options = {});

struct OcaOptions {
  BuildMipOptions build;
  BnbOptions bnb;
  // When bnb.warm_start is empty, start from the ACA allocation.
  bool warm_start_from_aca = true;
};

BnbResult OcaAllocate(const Instance& instance, const OcaOptions& options = {});

}  // namespace mobcache

#endif  // MOBCACHE_OCA_H_

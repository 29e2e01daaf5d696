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

#include "mobcache/oca.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <utility>

#include "mobcache/aca.h"
#include "mobcache/error.h"

namespace mobcache {
namespace {

using VisitKey = std::vector<std::pair<std::size_t, int>>;

VisitKey VisitsOf(const Walk& walk) {
  VisitKey key;
  for (std::size_t h : walk.steps) {
    auto it = std::find_if(key.begin(), key.end(),
                           [h](const auto& e) { return e.first == h; });
    if (it == key.end()) {
      key.emplace_back(h, 1);
    } else {
      ++it->second;
    }
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

Allocation MipProblem::ExtractAllocation(
    const std::vector<double>& values) const {
  Allocation alloc(num_helpers, num_files);
  for (std::size_t h = 0; h < num_helpers; ++h) {
    for (std::size_t i = 0; i < num_files; ++i) {
      const std::int64_t col = x(h, i);
      if (col == kAbsent) continue;
      alloc.at(h, i) = std::clamp(values[static_cast<std::size_t>(col)], 0.0,
                                  1.0);
    }
  }
  return alloc;
}

MipProblem BuildMip(const Instance& instance, const BuildMipOptions& options) {
  instance.Validate();
  const std::size_t n = instance.num_helpers();
  const std::size_t files = instance.num_files();
  const int d = instance.deadline;

  MipProblem mip;
  mip.num_helpers = n;
  mip.num_files = files;
  mip.deadline = d;
  mip.walks = EnumerateWalks(instance.mobility, d, options.enumeration_cap);
  mip.unpruned_variable_count =
      files * (CountWalks(n, d) + n * static_cast<std::uint64_t>(d) + n);

  std::vector<VisitKey> class_visits;
  mip.walk_class.resize(mip.walks.size());
  std::map<VisitKey, std::size_t> class_of;
  for (std::size_t w = 0; w < mip.walks.size(); ++w) {
    VisitKey key = VisitsOf(mip.walks[w].walk);
    if (options.merge_equivalent_walks) {
      auto [it, inserted] = class_of.try_emplace(key, class_visits.size());
      if (inserted) class_visits.push_back(std::move(key));
      mip.walk_class[w] = it->second;
    } else {
      mip.walk_class[w] = class_visits.size();
      class_visits.push_back(std::move(key));
    }
  }
  mip.num_classes = class_visits.size();

  // Objective weight of T(i, class).
  std::vector<double> coef(files * mip.num_classes, 0.0);
  for (std::size_t w = 0; w < mip.walks.size(); ++w) {
    const auto& ww = mip.walks[w];
    const std::size_t first = ww.walk.steps.front();
    for (std::size_t i = 0; i < files; ++i) {
      coef[i * mip.num_classes + mip.walk_class[w]] +=
          ww.probability * instance.requests.prob(first, i);
    }
  }
  std::vector<bool> file_used(files, false);
  for (std::size_t i = 0; i < files; ++i) {
    for (std::size_t c = 0; c < mip.num_classes; ++c) {
      if (coef[i * mip.num_classes + c] > 0.0) file_used[i] = true;
    }
  }

  LpProblem& lp = mip.lp;
  mip.x_col.assign(n * files, MipProblem::kAbsent);
  mip.u_col.assign(n * files * static_cast<std::size_t>(d),
                   MipProblem::kAbsent);
  mip.t_col.assign(files * mip.num_classes, MipProblem::kAbsent);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < files; ++i) {
      if (file_used[i]) {
        mip.x_col[h * files + i] =
            static_cast<std::int64_t>(lp.AddVariable(0.0, 0.0, 1.0));
      }
    }
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < files; ++i) {
      if (!file_used[i]) continue;
      const double per_slot =
          std::min(1.0, static_cast<double>(instance.helpers.budget(h)) /
                            static_cast<double>(instance.catalog.size(i)));
      for (int k = 1; k <= d; ++k) {
        mip.u_col[(h * files + i) * d + (k - 1)] =
            static_cast<std::int64_t>(lp.AddVariable(0.0, 0.0, per_slot));
      }
    }
  }
  for (std::size_t i = 0; i < files; ++i) {
    for (std::size_t c = 0; c < mip.num_classes; ++c) {
      const double w = coef[i * mip.num_classes + c];
      if (w <= 0.0) continue;
      const std::size_t col = lp.AddVariable(-w, 0.0, 1.0);
      mip.t_col[i * mip.num_classes + c] = static_cast<std::int64_t>(col);
      mip.binary_vars.push_back(col);
      mip.objective_constant += w;
    }
  }

  // Capacity rows are scaled by the largest file size to keep the tableau
  // entries near 1.
  const double scale = static_cast<double>(*std::max_element(
      instance.catalog.file_sizes().begin(),
      instance.catalog.file_sizes().end()));
  for (std::size_t h = 0; h < n; ++h) {
    LpRow row{{}, RowSense::kLessEqual,
              static_cast<double>(instance.helpers.capacity(h)) / scale};
    for (std::size_t i = 0; i < files; ++i) {
      const std::int64_t col = mip.x(h, i);
      if (col == MipProblem::kAbsent) continue;
      row.terms.emplace_back(
          static_cast<std::size_t>(col),
          static_cast<double>(instance.catalog.size(i)) / scale);
    }
    if (!row.terms.empty()) lp.AddRow(std::move(row));
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t i = 0; i < files; ++i) {
      if (mip.x(h, i) == MipProblem::kAbsent) continue;
      LpRow row{{}, RowSense::kLessEqual, 0.0};
      for (int k = 1; k <= d; ++k) {
        row.terms.emplace_back(static_cast<std::size_t>(mip.u(h, i, k)), 1.0);
      }
      row.terms.emplace_back(static_cast<std::size_t>(mip.x(h, i)), -1.0);
      lp.AddRow(std::move(row));
    }
  }
  for (std::size_t i = 0; i < files; ++i) {
    for (std::size_t c = 0; c < mip.num_classes; ++c) {
      const std::int64_t t = mip.t(i, c);
      if (t == MipProblem::kAbsent) continue;
      LpRow row{{}, RowSense::kGreaterEqual, 0.0};
      for (const auto& [h, visits] : class_visits[c]) {
        for (int k = 1; k <= visits; ++k) {
          row.terms.emplace_back(static_cast<std::size_t>(mip.u(h, i, k)),
                                 1.0);
        }
      }
      row.terms.emplace_back(static_cast<std::size_t>(t), -1.0);
      lp.AddRow(std::move(row));
    }
  }
  return mip;
}

namespace {

struct Node {
  double bound = 0.0;
  std::int64_t id = 0;
  std::vector<std::pair<std::size_t, double>> fixes;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Fractional binary with the largest weight * min(t, 1 - t); ties go to the
// lowest column. Returns nullopt when all binaries are integral.
std::optional<std::size_t> ChooseBranchColumn(const MipProblem& mip,
                                              const std::vector<double>& values,
                                              double tol) {
  std::optional<std::size_t> best;
  double best_score = -1.0;
  for (std::size_t col : mip.binary_vars) {
    const double t = values[col];
    const double frac = std::min(t, 1.0 - t);
    if (frac <= tol) continue;
    const double score = -mip.lp.cost(col) * frac;
    if (score > best_score || (score == best_score && col < *best)) {
      best_score = score;
      best = col;
    }
  }
  return best;
}

}  // namespace

BnbResult SolveBranchAndBound(const MipProblem& mip, const Instance& instance,
                              const BnbOptions& options) {
  if (!(options.integrality_tol > 0.0) || !(options.objective_gap_tol > 0.0)) {
    Fail(ErrorCode::kInvalidParameter, "tolerances must be positive");
  }
  if (mip.num_helpers != instance.num_helpers() ||
      mip.num_files != instance.num_files() ||
      mip.deadline != instance.deadline) {
    Fail(ErrorCode::kDimensionMismatch, "MIP was built for another instance");
  }
  const double tol = options.objective_gap_tol;

  BnbResult result;
  result.allocation = options.warm_start.value_or(
      Allocation(mip.num_helpers, mip.num_files));
  const auto verdict =
      CheckFeasible(result.allocation, instance.helpers, instance.catalog);
  if (!verdict.feasible) {
    Fail(ErrorCode::kInvalidInput, "warm start is infeasible: " + verdict.reason);
  }
  result.objective = FailureProbabilityExact(result.allocation, instance).p_fail;

  std::priority_queue<Node, std::vector<Node>, WorseNode> frontier;
  std::int64_t next_id = 0;
  frontier.push(Node{-kInfinity, next_id++, {}});
  double closed_min = kInfinity;

  while (!frontier.empty()) {
    if (result.nodes >= options.node_limit) {
      result.node_limit_hit = true;
      break;
    }
    Node node = frontier.top();
    frontier.pop();
    if (node.bound >= result.objective - tol) {
      closed_min = std::min(closed_min, node.bound);
      continue;
    }
    LpProblem lp = mip.lp;
    for (const auto& [col, v] : node.fixes) lp.set_bounds(col, v, v);
    const LpSolution sol = SolveLp(lp, options.lp);
    ++result.nodes;
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) {
      Fail(ErrorCode::kInternal, std::string("node LP ended ") +
                                     std::string(LpStatusName(sol.status)));
    }
    const double value = sol.objective_value + mip.objective_constant;
    if (result.nodes == 1) result.root_bound = value;

    Allocation candidate = mip.ExtractAllocation(sol.values);
    if (CheckFeasible(candidate, instance.helpers, instance.catalog).feasible) {
      const double exact = FailureProbabilityExact(candidate, instance).p_fail;
      if (exact < result.objective) {
        result.objective = exact;
        result.allocation = std::move(candidate);
      }
    }
    if (value >= result.objective - tol) {
      closed_min = std::min(closed_min, value);
      continue;
    }
    const auto branch =
        ChooseBranchColumn(mip, sol.values, options.integrality_tol);
    if (!branch) {
      closed_min = std::min(closed_min, value);
      continue;
    }
    for (double v : {0.0, 1.0}) {
      Node child{value, next_id++, node.fixes};
      child.fixes.emplace_back(*branch, v);
      frontier.push(std::move(child));
    }
  }

  double lower = std::min(result.objective, closed_min);
  if (!frontier.empty()) lower = std::min(lower, frontier.top().bound);
  result.lower_bound = std::max(lower, 0.0);
  result.gap = std::max(result.objective - result.lower_bound, 0.0);
  return result;
}

BnbResult OcaAllocate(const Instance& instance, const OcaOptions& options) {
  const MipProblem mip = BuildMip(instance, options.build);
  BnbOptions bnb = options.bnb;
  if (!bnb.warm_start && options.warm_start_from_aca) {
    bnb.warm_start = AcaAllocate(instance);
  }
  return SolveBranchAndBound(mip, instance, bnb);
}

}  // namespace mobcache

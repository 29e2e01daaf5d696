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

// Random walks over the helper chain: walk probabilities, exhaustive
// enumeration, first-passage probabilities, and the per-(helper, file,
// contact count) probabilities that drive the approximate allocator.

#ifndef MOBCACHE_WALKS_H_
#define MOBCACHE_WALKS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mobcache/model.h"

namespace mobcache {

// Enumeration refuses instances with more than this many candidate walks
// (n^d) unless the caller raises the cap.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// n^d, saturating at UINT64_MAX.
std::uint64_t CountWalks(std::size_t n, int d);

// Throws kInstanceTooLarge when n^d exceeds `cap`.
void CheckEnumerable(std::size_t n, int d, std::uint64_t cap);

struct Walk {
  std::vector<std::size_t> steps;  // helper visited at slot t, t = 0..d-1
};

struct WeightedWalk {
  Walk walk;
  double probability = 0.0;
};

// P_init(V_1) * prod_t M(V_t, V_{t+1}), multiplied left to right.
double WalkProbability(const MobilityModel& model,
                       std::span<const std::size_t> steps);

// Depth-first continuation of the walk in `steps` (non-empty, already
// carrying probability `prob`) up to length d. Calls
// visit(std::span<const std::size_t>, double) for every completion reached
// through positive transitions, in lexicographic order.
template <typename Visitor>
void ExtendWalks(const MobilityModel& model, int d,
                 std::vector<std::size_t>& steps, double prob,
                 Visitor&& visit) {
  if (static_cast<int>(steps.size()) == d) {
    visit(std::span<const std::size_t>(steps), prob);
    return;
  }
  const std::size_t n = model.num_helpers();
  const auto row = model.trans().row(steps.back());
  for (std::size_t next = 0; next < n; ++next) {
    if (row[next] == 0.0) continue;
    steps.push_back(next);
    ExtendWalks(model, d, steps, prob * row[next], visit);
    steps.pop_back();
  }
}

// Visits every walk of length d with non-zero probability exactly once, in
// lexicographic order.
template <typename Visitor>
void ForEachWalk(const MobilityModel& model, int d, Visitor&& visit,
                 std::uint64_t cap = kDefaultEnumerationCap) {
  CheckEnumerable(model.num_helpers(), d, cap);
  std::vector<std::size_t> steps;
  steps.reserve(static_cast<std::size_t>(d));
  for (std::size_t first = 0; first < model.num_helpers(); ++first) {
    if (model.init(first) == 0.0) continue;
    steps.assign(1, first);
    ExtendWalks(model, d, steps, model.init(first), visit);
  }
}

std::vector<WeightedWalk> EnumerateWalks(
    const MobilityModel& model, int d,
    std::uint64_t cap = kDefaultEnumerationCap);

// Non-zero prefixes of length min(d, 2) in lexicographic order. Parallel
// kernels hand one prefix to each work item and reduce per-prefix partial
// results in this order, which keeps them independent of thread count.
std::vector<WeightedWalk> WalkPrefixes(const MobilityModel& model, int d);

// r_{i,j}(l): probability that a walk currently at helper i reaches helper j
// for the first time exactly l slots later, for 1 <= l <= max_steps.
class FirstPassageTable {
 public:
  FirstPassageTable(const MobilityModel& model, int max_steps);

  int max_steps() const { return max_steps_; }
  double operator()(std::size_t from, std::size_t to, int steps) const {
    return table_[((static_cast<std::size_t>(steps) - 1) * n_ + from) * n_ +
                  to];
  }

 private:
  std::size_t n_;
  int max_steps_;
  std::vector<double> table_;
};

// Single entry of the table above; builds the table up to `steps`.
double FirstPassage(const MobilityModel& model, std::size_t from,
                    std::size_t to, int steps);

// Fills out[l-1][i] = r_{i,target}(l) for l = 1..max_steps. `out` must hold
// max_steps * n entries.
void FirstPassageToTarget(const MobilityModel& model, std::size_t target,
                          int max_steps, std::span<double> out);

// values(h, i, k) = probability that a request is for file i and the walk
// visits helper h at least k times within d slots, for k = 1..d.
class ContactValueTable {
 public:
  ContactValueTable(std::size_t num_helpers, std::size_t num_files,
                    int deadline);

  std::size_t num_helpers() const { return n_; }
  std::size_t num_files() const { return files_; }
  int deadline() const { return d_; }

  // k is 1-based; k > d yields 0.
  double operator()(std::size_t h, std::size_t file, int k) const {
    if (k > d_) return 0.0;
    return values_[Index(h, file, k)];
  }
  double& at(std::size_t h, std::size_t file, int k) {
    return values_[Index(h, file, k)];
  }

  std::span<const double> raw() const { return values_; }
  std::span<double> raw() { return values_; }

  double MaxAbsDiff(const ContactValueTable& other) const;

 private:
  std::size_t Index(std::size_t h, std::size_t file, int k) const {
    return (h * files_ + file) * static_cast<std::size_t>(d_) +
           static_cast<std::size_t>(k - 1);
  }

  std::size_t n_;
  std::size_t files_;
  int d_;
  std::vector<double> values_;
};

// Closed form from first-passage and return-time probabilities (polynomial
// in n, |O| and d).
ContactValueTable ContactValues(const MobilityModel& model,
                                const RequestModel& requests, int d);

// Brute force over every walk.
ContactValueTable ContactValueOracle(
    const MobilityModel& model, const RequestModel& requests, int d,
    std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mobcache

#endif  // MOBCACHE_WALKS_H_

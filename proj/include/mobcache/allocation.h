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

// Storage allocations, the per-contact download schedule they induce, and
// the probability that a request cannot be served by helpers in time.

#ifndef MOBCACHE_ALLOCATION_H_
#define MOBCACHE_ALLOCATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobcache/matrix.h"
#include "mobcache/model.h"
#include "mobcache/walks.h"

namespace mobcache {

// Capacity constraints are checked with this much slack (bytes) to absorb
// LP solver noise.
inline constexpr double kCapacityTolerance = 1e-6;

// A file counts as delivered when the downloaded fraction reaches
// 1 - kDeliveryTolerance, so allocations that sum to exactly 1 in real
// arithmetic are not lost to rounding.
inline constexpr double kDeliveryTolerance = 1e-9;

// x(h, i): fraction of file i's size stored, encoded, at helper h.
class Allocation {
 public:
  Allocation() = default;
  Allocation(std::size_t num_helpers, std::size_t num_files)
      : x_(num_helpers, num_files) {}
  explicit Allocation(Matrix x) : x_(std::move(x)) {}

  std::size_t num_helpers() const { return x_.rows(); }
  std::size_t num_files() const { return x_.cols(); }
  double operator()(std::size_t h, std::size_t file) const {
    return x_(h, file);
  }
  double& at(std::size_t h, std::size_t file) { return x_(h, file); }
  const Matrix& x() const { return x_; }

  bool operator==(const Allocation&) const = default;

 private:
  Matrix x_;
};

struct Feasibility {
  bool feasible = false;
  // capacity(h) - bytes stored at h; negative when over capacity.
  std::vector<double> slack;
  std::string reason;  // empty when feasible
};

// Throws kDimensionMismatch when shapes disagree.
Feasibility CheckFeasible(const Allocation& alloc, const HelperSet& helpers,
                          const Catalog& catalog);

// u(h, i, k): fraction of file i obtainable from helper h on the k-th
// contact, k = 1..d. Later contacts only fetch data not fetched before.
class DownloadSchedule {
 public:
  // `u` is laid out [h][i][k-1]; throws kDimensionMismatch on a size
  // mismatch and kInvalidInput on negative or non-finite entries.
  DownloadSchedule(std::size_t num_helpers, std::size_t num_files,
                   int deadline, std::vector<double> u);

  std::size_t num_helpers() const { return n_; }
  std::size_t num_files() const { return files_; }
  int deadline() const { return d_; }

  // k is 1-based.
  double operator()(std::size_t h, std::size_t file, int k) const {
    return u_[Index(h, file, k)];
  }
  // Sum of u(h, i, 1..k) for 0 <= k <= d.
  double Cumulative(std::size_t h, std::size_t file, int k) const {
    return k == 0 ? 0.0 : cumulative_[Index(h, file, k)];
  }
  std::span<const double> raw() const { return u_; }

 private:
  std::size_t Index(std::size_t h, std::size_t file, int k) const {
    return (h * files_ + file) * static_cast<std::size_t>(d_) +
           static_cast<std::size_t>(k - 1);
  }

  std::size_t n_;
  std::size_t files_;
  int d_;
  std::vector<double> u_;
  std::vector<double> cumulative_;
};

DownloadSchedule ComputeDownloadSchedule(const Allocation& alloc,
                                         const HelperSet& helpers,
                                         const Catalog& catalog, int d);

enum class EvalMethod { kExact, kMonteCarlo };

std::string_view EvalMethodName(EvalMethod method);

struct EvalReport {
  double p_fail = 0.0;
  EvalMethod method = EvalMethod::kExact;
  std::int64_t samples = 0;       // 0 for exact
  double ci_halfwidth_99 = 0.0;   // 0 for exact
};

// Sums over every walk; throws kInstanceTooLarge beyond `cap`.
EvalReport FailureProbabilityExact(const Allocation& alloc,
                                   const Instance& instance,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// Draws `samples` independent (walk, file) pairs. Samples are cut into
// blocks of kMonteCarloBlock; block b draws from an engine seeded with
// StreamSeed(seed, b), so the estimate depends only on (samples, seed).
inline constexpr std::int64_t kMonteCarloBlock = 4096;

EvalReport FailureProbabilityMc(const Allocation& alloc,
                                const Instance& instance, std::int64_t samples,
                                std::uint64_t seed);

// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

}  // namespace mobcache

#endif  // MOBCACHE_ALLOCATION_H_

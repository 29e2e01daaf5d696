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

// Domain data for the mobility-aware cache allocation problem: the file
// catalog, the helper stations, the Markov mobility chain over helpers and
// the per-helper request distributions.
//
// Helper and file indices are 0-based everywhere in the library. Only the
// CLI's human-readable output is 1-based.

#ifndef MOBCACHE_MODEL_H_
#define MOBCACHE_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mobcache/matrix.h"

namespace mobcache {

// Probability vectors and stochastic rows must sum to 1 within this bound.
// Smaller deviations are renormalized away, larger ones are rejected.
inline constexpr double kNormalizationTolerance = 1e-9;

// Validates `dist` as a probability vector and renormalizes it in place.
// Throws kInvalidInput naming `what` on negative/non-finite entries or a sum
// off by more than kNormalizationTolerance.
void NormalizeDistribution(std::span<double> dist, const std::string& what);

class Catalog {
 public:
  explicit Catalog(std::vector<std::int64_t> file_sizes);

  std::size_t num_files() const { return file_sizes_.size(); }
  std::int64_t size(std::size_t file) const { return file_sizes_[file]; }
  const std::vector<std::int64_t>& file_sizes() const { return file_sizes_; }
  std::int64_t total_bytes() const;

 private:
  std::vector<std::int64_t> file_sizes_;
};

class HelperSet {
 public:
  HelperSet(std::vector<std::int64_t> cache_capacities,
            std::vector<std::int64_t> slot_budgets);

  // n helpers sharing one capacity and one per-slot budget.
  static HelperSet Uniform(std::size_t n, std::int64_t cache_capacity,
                           std::int64_t slot_budget);

  std::size_t size() const { return capacities_.size(); }
  std::int64_t capacity(std::size_t h) const { return capacities_[h]; }
  std::int64_t budget(std::size_t h) const { return budgets_[h]; }
  const std::vector<std::int64_t>& capacities() const { return capacities_; }
  const std::vector<std::int64_t>& budgets() const { return budgets_; }

 private:
  std::vector<std::int64_t> capacities_;
  std::vector<std::int64_t> budgets_;
};

// Time-homogeneous discrete-time Markov chain over the n helpers.
class MobilityModel {
 public:
  // Validates and renormalizes `init` and every row of `trans`.
  MobilityModel(std::vector<double> init, Matrix trans);

  std::size_t num_helpers() const { return init_.size(); }
  double init(std::size_t h) const { return init_[h]; }
  double trans(std::size_t from, std::size_t to) const {
    return trans_(from, to);
  }
  const std::vector<double>& init() const { return init_; }
  const Matrix& trans() const { return trans_; }

 private:
  std::vector<double> init_;
  Matrix trans_;
};

// Row h is the distribution of the requested file for requests issued
// around helper h.
class RequestModel {
 public:
  explicit RequestModel(Matrix per_helper);

  std::size_t num_helpers() const { return per_helper_.rows(); }
  std::size_t num_files() const { return per_helper_.cols(); }
  double prob(std::size_t h, std::size_t file) const {
    return per_helper_(h, file);
  }
  const Matrix& per_helper() const { return per_helper_; }

 private:
  Matrix per_helper_;
};

struct TraceRecord {
  std::string user_id;
  double timestamp_s = 0.0;
  std::int64_t helper_id = 0;
};

// Contact log grouped by user. Users keep the order of their first
// appearance; each user's records are stably sorted by timestamp.
class TraceLog {
 public:
  explicit TraceLog(std::vector<TraceRecord> records);

  struct UserTrace {
    std::string user_id;
    std::vector<TraceRecord> records;
  };

  const std::vector<UserTrace>& users() const { return users_; }
  std::size_t num_records() const { return num_records_; }
  bool empty() const { return num_records_ == 0; }

 private:
  std::vector<UserTrace> users_;
  std::size_t num_records_ = 0;
};

// Everything the allocators and evaluators need about one problem.
struct Instance {
  MobilityModel mobility;
  RequestModel requests;
  HelperSet helpers;
  Catalog catalog;
  int deadline = 1;  // d, in slots

  std::size_t num_helpers() const { return mobility.num_helpers(); }
  std::size_t num_files() const { return catalog.num_files(); }

  // Throws kDimensionMismatch / kInvalidParameter on inconsistent parts.
  void Validate() const;
};

// Zipf-Mandelbrot popularity: rank r (1-based) gets weight 1/(r+shift)^shape.
std::vector<double> BuildZipfMandelbrot(std::size_t num_files, double shape,
                                        double shift);

// Every helper shares the same request distribution.
RequestModel UniformRequestModel(std::span<const double> popularity,
                                 std::size_t n);

// Fits (P_init, M) to a slotted contact trace. P_init counts the first helper
// of every user. Within a slot, each change of helper counts one transition
// from the current helper to the new one. A slot after the user's first slot
// that brings no new helper counts one self-transition. Rows with no counts
// become self-loops.
MobilityModel EstimateFromTrace(const TraceLog& trace, double slot_duration_s,
                                std::size_t n);

}  // namespace mobcache

#endif  // MOBCACHE_MODEL_H_

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

#include "mobcache/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "mobcache/error.h"

namespace mobcache {

void NormalizeDistribution(std::span<double> dist, const std::string& what) {
  if (dist.empty()) Fail(ErrorCode::kInvalidInput, what + " is empty");
  double sum = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p) || p < 0.0) {
      Fail(ErrorCode::kInvalidInput,
           what + " has a negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    Fail(ErrorCode::kInvalidInput,
         what + " sums to " + std::to_string(sum) + ", expected 1");
  }
  for (double& p : dist) p /= sum;
}

Catalog::Catalog(std::vector<std::int64_t> file_sizes)
    : file_sizes_(std::move(file_sizes)) {
  if (file_sizes_.empty()) {
    Fail(ErrorCode::kInvalidInput, "catalog needs at least one file");
  }
  for (auto s : file_sizes_) {
    if (s <= 0) Fail(ErrorCode::kInvalidInput, "file sizes must be positive");
  }
}

std::int64_t Catalog::total_bytes() const {
  return std::accumulate(file_sizes_.begin(), file_sizes_.end(),
                         std::int64_t{0});
}

HelperSet::HelperSet(std::vector<std::int64_t> cache_capacities,
                     std::vector<std::int64_t> slot_budgets)
    : capacities_(std::move(cache_capacities)),
      budgets_(std::move(slot_budgets)) {
  if (capacities_.empty()) {
    Fail(ErrorCode::kInvalidInput, "need at least one helper");
  }
  if (capacities_.size() != budgets_.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "cache capacities and slot budgets differ in length");
  }
  for (std::size_t h = 0; h < capacities_.size(); ++h) {
    if (capacities_[h] < 0) {
      Fail(ErrorCode::kInvalidInput, "cache capacity must be non-negative");
    }
    if (budgets_[h] <= 0) {
      Fail(ErrorCode::kInvalidInput, "slot budget must be positive");
    }
  }
}

HelperSet HelperSet::Uniform(std::size_t n, std::int64_t cache_capacity,
                             std::int64_t slot_budget) {
  return HelperSet(std::vector<std::int64_t>(n, cache_capacity),
                   std::vector<std::int64_t>(n, slot_budget));
}

MobilityModel::MobilityModel(std::vector<double> init, Matrix trans)
    : init_(std::move(init)), trans_(std::move(trans)) {
  if (init_.empty()) Fail(ErrorCode::kInvalidInput, "need at least one helper");
  if (trans_.rows() != init_.size() || trans_.cols() != init_.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "transition matrix must be n x n for n = len(init)");
  }
  NormalizeDistribution(init_, "initial distribution");
  for (std::size_t r = 0; r < trans_.rows(); ++r) {
    NormalizeDistribution(trans_.row(r),
                          "transition row " + std::to_string(r));
  }
}

RequestModel::RequestModel(Matrix per_helper)
    : per_helper_(std::move(per_helper)) {
  if (per_helper_.rows() == 0 || per_helper_.cols() == 0) {
    Fail(ErrorCode::kInvalidInput, "request model must be non-empty");
  }
  for (std::size_t h = 0; h < per_helper_.rows(); ++h) {
    NormalizeDistribution(per_helper_.row(h),
                          "request distribution of helper " +
                              std::to_string(h));
  }
}

TraceLog::TraceLog(std::vector<TraceRecord> records)
    : num_records_(records.size()) {
  std::unordered_map<std::string, std::size_t> slot_of_user;
  for (auto& rec : records) {
    if (!std::isfinite(rec.timestamp_s)) {
      Fail(ErrorCode::kInvalidInput, "non-finite timestamp");
    }
    if (rec.helper_id < 0) {
      Fail(ErrorCode::kInvalidInput, "negative helper id");
    }
    auto [it, inserted] = slot_of_user.try_emplace(rec.user_id, users_.size());
    if (inserted) users_.push_back(UserTrace{rec.user_id, {}});
    users_[it->second].records.push_back(std::move(rec));
  }
  for (auto& user : users_) {
    std::stable_sort(user.records.begin(), user.records.end(),
                     [](const TraceRecord& a, const TraceRecord& b) {
                       return a.timestamp_s < b.timestamp_s;
                     });
  }
}

void Instance::Validate() const {
  const std::size_t n = mobility.num_helpers();
  if (requests.num_helpers() != n || helpers.size() != n) {
    Fail(ErrorCode::kDimensionMismatch,
         "mobility, requests and helpers disagree on the helper count");
  }
  if (requests.num_files() != catalog.num_files()) {
    Fail(ErrorCode::kDimensionMismatch,
         "requests and catalog disagree on the file count");
  }
  if (deadline < 1) Fail(ErrorCode::kInvalidParameter, "deadline must be >= 1");
}

std::vector<double> BuildZipfMandelbrot(std::size_t num_files, double shape,
                                        double shift) {
  if (num_files == 0) {
    Fail(ErrorCode::kInvalidParameter, "need at least one file");
  }
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    Fail(ErrorCode::kInvalidParameter, "Zipf shape must be positive");
  }
  if (!(shift >= 0.0) || !std::isfinite(shift)) {
    Fail(ErrorCode::kInvalidParameter, "Zipf shift must be non-negative");
  }
  std::vector<double> pop(num_files);
  double total = 0.0;
  for (std::size_t r = 0; r < num_files; ++r) {
    pop[r] = std::pow(static_cast<double>(r + 1) + shift, -shape);
    total += pop[r];
  }
  for (double& p : pop) p /= total;
  return pop;
}

RequestModel UniformRequestModel(std::span<const double> popularity,
                                 std::size_t n) {
  Matrix m(n, popularity.size());
  for (std::size_t h = 0; h < n; ++h) {
    std::copy(popularity.begin(), popularity.end(), m.row(h).begin());
  }
  return RequestModel(std::move(m));
}

MobilityModel EstimateFromTrace(const TraceLog& trace, double slot_duration_s,
                                std::size_t n) {
  if (trace.empty()) Fail(ErrorCode::kEmptyInput, "trace has no records");
  if (!(slot_duration_s > 0.0) || !std::isfinite(slot_duration_s)) {
    Fail(ErrorCode::kInvalidParameter, "slot duration must be positive");
  }
  if (n == 0) Fail(ErrorCode::kInvalidParameter, "need at least one helper");

  std::vector<double> init_counts(n, 0.0);
  Matrix counts(n, n);
  auto slot_of = [slot_duration_s](double t) {
    return static_cast<std::int64_t>(std::floor(t / slot_duration_s));
  };

  for (const auto& user : trace.users()) {
    for (const auto& rec : user.records) {
      if (static_cast<std::size_t>(rec.helper_id) >= n) {
        Fail(ErrorCode::kInvalidInput,
             "helper id " + std::to_string(rec.helper_id) +
                 " out of range for n = " + std::to_string(n));
      }
    }
    const auto& recs = user.records;
    auto current = static_cast<std::size_t>(recs.front().helper_id);
    init_counts[current] += 1.0;
    const std::int64_t first_slot = slot_of(recs.front().timestamp_s);
    std::int64_t slot = first_slot;
    bool moved = false;

    auto close_slot = [&] {
      if (slot != first_slot && !moved) counts(current, current) += 1.0;
    };

    for (std::size_t j = 1; j < recs.size(); ++j) {
      const std::int64_t s = slot_of(recs[j].timestamp_s);
      if (s > slot) {
        close_slot();
        // Slots strictly between the two events saw no new helper.
        counts(current, current) += static_cast<double>(s - slot - 1);
        slot = s;
        moved = false;
      }
      const auto h = static_cast<std::size_t>(recs[j].helper_id);
      if (h != current) {
        counts(current, h) += 1.0;
        current = h;
        moved = true;
      }
    }
    close_slot();
  }

  const double users = std::accumulate(init_counts.begin(), init_counts.end(),
                                       0.0);
  for (double& c : init_counts) c /= users;
  for (std::size_t r = 0; r < n; ++r) {
    auto row = counts.row(r);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    if (total == 0.0) {
      row[r] = 1.0;
    } else {
      for (double& c : row) c /= total;
    }
  }
  return MobilityModel(std::move(init_counts), std::move(counts));
}

}  // namespace mobcache

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

#include "mobcache/synthetic.h"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mobcache/error.h"

namespace mobcache {
namespace {

// Random weights in [0.5, 1.5).
std::vector<double> JitteredWeights(std::size_t count, Rng& rng) {
  std::vector<double> w(count);
  for (double& x : w) x = 0.5 + UnitUniform(rng);
  return w;
}

// Random probability vector with entries zeroed at `zero_probability`, keeping
// at least one positive entry.
std::vector<double> SparseDistribution(std::size_t count, double zero_probability,
                                       Rng& rng) {
  std::vector<double> w(count);
  double total = 0.0;
  for (double& x : w) {
    x = UnitUniform(rng) < zero_probability ? 0.0 : 0.05 + UnitUniform(rng);
    total += x;
  }
  if (total == 0.0) {
    w[static_cast<std::size_t>(UniformInt(rng, 0, count - 1))] = 1.0;
    total = 1.0;
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> Cdf(std::span<const double> p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = acc += p[i];
  return cdf;
}

}  // namespace

MobilityModel GridMobilityModel(std::size_t n, double locality,
                                std::uint64_t seed) {
  if (n == 0) Fail(ErrorCode::kInvalidParameter, "need at least one helper");
  if (!(locality >= 0.0 && locality <= 1.0)) {
    Fail(ErrorCode::kInvalidParameter, "locality must lie in [0, 1]");
  }
  Rng rng(StreamSeed(seed, 0));
  const auto width = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n))));
  Matrix trans(n, n);
  for (std::size_t h = 0; h < n; ++h) {
    const std::size_t row = h / width, col = h % width;
    std::vector<std::size_t> neighbours;
    if (row > 0) neighbours.push_back(h - width);
    if (col > 0) neighbours.push_back(h - 1);
    if (col + 1 < width && h + 1 < n) neighbours.push_back(h + 1);
    if (h + width < n) neighbours.push_back(h + width);
    if (neighbours.empty()) {
      trans(h, h) = 1.0;
      continue;
    }
    const auto w = JitteredWeights(neighbours.size(), rng);
    double total = 0.0;
    for (double x : w) total += x;
    trans(h, h) = locality;
    for (std::size_t k = 0; k < neighbours.size(); ++k) {
      trans(h, neighbours[k]) += (1.0 - locality) * w[k] / total;
    }
  }
  auto init = JitteredWeights(n, rng);
  double total = 0.0;
  for (double x : init) total += x;
  for (double& x : init) x /= total;
  return MobilityModel(std::move(init), std::move(trans));
}

TraceLog SampleTrace(const MobilityModel& model, std::size_t num_users,
                     int num_slots, double slot_duration_s,
                     std::uint64_t seed) {
  if (num_slots < 1) Fail(ErrorCode::kInvalidParameter, "need >= 1 slot");
  if (!(slot_duration_s > 0.0)) {
    Fail(ErrorCode::kInvalidParameter, "slot duration must be positive");
  }
  const std::size_t n = model.num_helpers();
  const auto init_cdf = Cdf(model.init());
  std::vector<std::vector<double>> row_cdf(n);
  for (std::size_t h = 0; h < n; ++h) row_cdf[h] = Cdf(model.trans().row(h));

  std::vector<TraceRecord> records;
  records.reserve(num_users * static_cast<std::size_t>(num_slots));
  for (std::size_t u = 0; u < num_users; ++u) {
    Rng rng(StreamSeed(seed, u));
    const std::string id = "u" + std::to_string(u);
    std::size_t h = SampleFromCdf(init_cdf, UnitUniform(rng));
    for (int s = 0; s < num_slots; ++s) {
      if (s > 0) h = SampleFromCdf(row_cdf[h], UnitUniform(rng));
      records.push_back(TraceRecord{id, (s + 0.5) * slot_duration_s,
                                    static_cast<std::int64_t>(h)});
    }
  }
  return TraceLog(std::move(records));
}

Instance RandomInstance(const RandomInstanceSpec& spec, Rng& rng) {
  const auto n = static_cast<std::size_t>(
      UniformInt(rng, 1, static_cast<std::int64_t>(spec.max_helpers)));
  const auto d = static_cast<int>(UniformInt(rng, 1, spec.max_deadline));
  const auto files = static_cast<std::size_t>(
      UniformInt(rng, 1, static_cast<std::int64_t>(spec.max_files)));

  auto init = SparseDistribution(n, spec.zero_probability, rng);
  Matrix trans(n, n);
  for (std::size_t h = 0; h < n; ++h) {
    const auto row = SparseDistribution(n, spec.zero_probability, rng);
    std::copy(row.begin(), row.end(), trans.row(h).begin());
  }
  Matrix requests(n, files);
  for (std::size_t h = 0; h < n; ++h) {
    const auto row = SparseDistribution(files, spec.zero_probability, rng);
    std::copy(row.begin(), row.end(), requests.row(h).begin());
  }
  std::vector<std::int64_t> sizes(files), caps(n), budgets(n);
  for (auto& s : sizes) s = UniformInt(rng, 1, spec.max_file_size);
  for (auto& b : budgets) b = UniformInt(rng, 1, spec.max_file_size);
  for (auto& c : caps) c = UniformInt(rng, 0, 2 * spec.max_file_size);

  Instance inst{MobilityModel(std::move(init), std::move(trans)),
                RequestModel(std::move(requests)),
                HelperSet(std::move(caps), std::move(budgets)),
                Catalog(std::move(sizes)), d};
  inst.Validate();
  return inst;
}

Allocation RandomFeasibleAllocation(const HelperSet& helpers,
                                    const Catalog& catalog, Rng& rng) {
  Allocation alloc(helpers.size(), catalog.num_files());
  for (std::size_t h = 0; h < helpers.size(); ++h) {
    double bytes = 0.0;
    for (std::size_t i = 0; i < catalog.num_files(); ++i) {
      alloc.at(h, i) = UnitUniform(rng);
      bytes += alloc(h, i) * static_cast<double>(catalog.size(i));
    }
    const double cap = static_cast<double>(helpers.capacity(h));
    if (bytes > cap) {
      const double scale = cap / bytes;
      for (std::size_t i = 0; i < catalog.num_files(); ++i) {
        alloc.at(h, i) *= scale;
      }
    }
  }
  return alloc;
}

}  // namespace mobcache

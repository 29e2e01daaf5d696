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

#include "kernel_common.h"

#include <algorithm>

#include "mobcache/rng.h"

namespace mobcache::kernels::internal {

void CountVisits(std::span<const std::size_t> steps, VisitCounts& out) {
  out.clear();
  for (std::size_t h : steps) {
    auto it = std::lower_bound(
        out.begin(), out.end(), h,
        [](const std::pair<std::size_t, int>& e, std::size_t v) {
          return e.first < v;
        });
    if (it != out.end() && it->first == h) {
      ++it->second;
    } else {
      out.insert(it, {h, 1});
    }
  }
}

double FailMass(std::span<const std::size_t> steps,
                const RequestModel& requests, const DownloadSchedule& schedule,
                VisitCounts& scratch) {
  CountVisits(steps, scratch);
  const std::size_t first = steps.front();
  double fail = 0.0;
  for (std::size_t i = 0; i < requests.num_files(); ++i) {
    const double q = requests.prob(first, i);
    if (q == 0.0) continue;
    double got = 0.0;
    for (const auto& [h, visits] : scratch) got += schedule.Cumulative(h, i, visits);
    if (got < 1.0 - kDeliveryTolerance) fail += q;
  }
  return fail;
}

void AddContacts(std::span<const std::size_t> steps, double prob,
                 const RequestModel& requests, ContactValueTable& out,
                 VisitCounts& scratch) {
  CountVisits(steps, scratch);
  const std::size_t first = steps.front();
  for (std::size_t i = 0; i < requests.num_files(); ++i) {
    const double mass = prob * requests.prob(first, i);
    if (mass == 0.0) continue;
    for (const auto& [h, visits] : scratch) {
      for (int k = 1; k <= visits; ++k) out.at(h, i, k) += mass;
    }
  }
}

void ContactValuesForHelper(const MobilityModel& model,
                            const RequestModel& requests, std::size_t target,
                            std::span<double> first_passage,
                            ContactValueTable& out) {
  const std::size_t n = model.num_helpers();
  const std::size_t files = requests.num_files();
  const int d = out.deadline();
  const int budget = d - 1;  // slots left after the first one
  FirstPassageToTarget(model, target, budget, first_passage);
  auto hit = [&](std::size_t from, int l) {
    return first_passage[static_cast<std::size_t>(l - 1) * n + from];
  };

  // returns[m][s]: probability that the walk, sitting at the target, comes
  // back exactly m times with the m-th return after exactly s slots; a sum
  // over compositions s = l_1 + ... + l_m of prod r_{target,target}(l_t).
  const auto width = static_cast<std::size_t>(budget + 1);
  std::vector<double> returns(static_cast<std::size_t>(d) * width, 0.0);
  returns[0] = 1.0;
  for (int m = 1; m < d; ++m) {
    for (int s = m; s <= budget; ++s) {
      double acc = 0.0;
      for (int l = 1; l <= s - (m - 1); ++l) {
        acc += hit(target, l) * returns[(m - 1) * width + (s - l)];
      }
      returns[m * width + s] = acc;
    }
  }
  // prefix[m][s] = sum_{t <= s} returns[m][t]
  std::vector<double> prefix(returns.size());
  for (int m = 0; m < d; ++m) {
    double acc = 0.0;
    for (int s = 0; s <= budget; ++s) {
      acc += returns[m * width + s];
      prefix[m * width + s] = acc;
    }
  }

  // Walks starting at the target: k visits need k - 1 returns.
  const double start_here = model.init(target);
  for (std::size_t i = 0; i < files; ++i) {
    const double w = start_here * requests.prob(target, i);
    for (int k = 1; k <= d; ++k) {
      out.at(target, i, k) = w * prefix[(k - 1) * width + budget];
    }
  }
  // Walks starting elsewhere: first arrival after l slots, then k - 1 returns
  // within the remaining budget - l slots.
  std::vector<double> reach(static_cast<std::size_t>(d));
  for (std::size_t from = 0; from < n; ++from) {
    if (from == target || model.init(from) == 0.0) continue;
    for (int k = 1; k <= d; ++k) {
      double acc = 0.0;
      for (int l = 1; l <= budget; ++l) {
        acc += hit(from, l) * prefix[(k - 1) * width + (budget - l)];
      }
      reach[k - 1] = model.init(from) * acc;
    }
    for (int k = 1; k <= d; ++k) {
      const double a = reach[k - 1];
      if (a == 0.0) continue;
      for (std::size_t i = 0; i < files; ++i) {
        out.at(target, i, k) += a * requests.prob(from, i);
      }
    }
  }
}

namespace {

std::vector<double> Cdf(std::span<const double> p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = acc += p[i];
  return cdf;
}

}  // namespace

SamplingTables::SamplingTables(const MobilityModel& model,
                               const RequestModel& reqs)
    : init(Cdf(model.init())) {
  for (std::size_t h = 0; h < model.num_helpers(); ++h) {
    trans.push_back(Cdf(model.trans().row(h)));
    requests.push_back(Cdf(reqs.per_helper().row(h)));
  }
}

std::int64_t McBlock(const SamplingTables& tables,
                     const DownloadSchedule& schedule, std::int64_t block,
                     std::int64_t count, std::uint64_t seed) {
  Rng rng(StreamSeed(seed, static_cast<std::uint64_t>(block)));
  const auto d = static_cast<std::size_t>(schedule.deadline());
  std::vector<std::size_t> steps(d);
  VisitCounts visits;
  std::int64_t failed = 0;
  for (std::int64_t s = 0; s < count; ++s) {
    steps[0] = SampleFromCdf(tables.init, UnitUniform(rng));
    for (std::size_t t = 1; t < d; ++t) {
      steps[t] = SampleFromCdf(tables.trans[steps[t - 1]], UnitUniform(rng));
    }
    const std::size_t file =
        SampleFromCdf(tables.requests[steps[0]], UnitUniform(rng));
    CountVisits(steps, visits);
    double got = 0.0;
    for (const auto& [h, k] : visits) got += schedule.Cumulative(h, file, k);
    if (got < 1.0 - kDeliveryTolerance) ++failed;
  }
  return failed;
}

}  // namespace mobcache::kernels::internal

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

#include "mobcache/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mobcache/aca.h"
#include "mobcache/allocation.h"
#include "mobcache/auxchain.h"
#include "mobcache/error.h"
#include "mobcache/oca.h"
#include "mobcache/rng.h"
#include "mobcache/synthetic.h"

namespace mobcache {
namespace {

// Streams keep every check independent of which others ran.
enum Stream : std::uint64_t {
  kContactStream = 1,
  kChainStream,
  kGreedyStream,
  kMcStream,
  kOcaStream,
};

constexpr double kAlphas[] = {0.25, 0.5, 0.75};

CheckResult Start(std::string name, double tolerance, std::string metric) {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  r.metric = std::move(metric);
  return r;
}

void Finish(CheckResult& r) {
  r.passed = r.max_error <= r.tolerance;
}

Instance ChainInstance(Rng& rng) {
  RandomInstanceSpec spec;  // n, d, |O| <= 3 keeps the chain small
  return RandomInstance(spec, rng);
}

}  // namespace

CheckResult CheckContactValues(std::uint64_t seed, int trials,
                               const ContactValueFn& values) {
  CheckResult r = Start("contact_values", 1e-12, "abs");
  Rng rng(StreamSeed(seed, kContactStream));
  RandomInstanceSpec spec;
  spec.max_helpers = 4;
  spec.max_deadline = 4;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = RandomInstance(spec, rng);
    const auto fast = values(inst.mobility, inst.requests, inst.deadline);
    const auto slow =
        ContactValueOracle(inst.mobility, inst.requests, inst.deadline);
    r.max_error = std::max(r.max_error, fast.MaxAbsDiff(slow));
    ++r.cases;
  }
  Finish(r);
  return r;
}

CheckResult CheckChainWeights(std::uint64_t seed, int trials,
                              const ContactValueFn& values) {
  CheckResult r = Start("chain_weight", 1e-10, "abs");
  Rng rng(StreamSeed(seed, kChainStream));
  for (int t = 0; t < trials; ++t) {
    const Instance inst = ChainInstance(rng);
    const Allocation alloc =
        RandomFeasibleAllocation(inst.helpers, inst.catalog, rng);
    const auto schedule = ComputeDownloadSchedule(alloc, inst.helpers,
                                                  inst.catalog, inst.deadline);
    const double direct = ExpectedWeight(
        schedule, values(inst.mobility, inst.requests, inst.deadline));
    for (double alpha : kAlphas) {
      const AuxChain chain =
          BuildAuxChain(inst.mobility, inst.requests, schedule, alpha);
      r.max_error = std::max(r.max_error,
                             std::abs(direct - ExpectedWeightViaChain(chain)));
    }
    ++r.cases;
  }
  Finish(r);
  return r;
}

CheckResult CheckStationary(std::uint64_t seed, int trials) {
  CheckResult r = Start("stationary_root", 1e-12, "abs");
  double worst_residual = 0.0;
  Rng rng(StreamSeed(seed, kChainStream));
  for (int t = 0; t < trials; ++t) {
    const Instance inst = ChainInstance(rng);
    const Allocation alloc =
        RandomFeasibleAllocation(inst.helpers, inst.catalog, rng);
    const auto schedule = ComputeDownloadSchedule(alloc, inst.helpers,
                                                  inst.catalog, inst.deadline);
    for (double alpha : kAlphas) {
      const AuxChain chain =
          BuildAuxChain(inst.mobility, inst.requests, schedule, alpha);
      std::vector<double> pi;
      try {
        pi = StationaryDistribution(chain);
      } catch (const Error& e) {
        r.detail = e.what();
        r.max_error = INFINITY;
        return r;
      }
      worst_residual = std::max(worst_residual, StationaryResidual(chain, pi));
      const double expected = 1.0 / (1.0 + alpha * inst.deadline);
      r.max_error = std::max(r.max_error, std::abs(pi[0] - expected));
      ++r.cases;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max residual %.3g", worst_residual);
  r.detail = buf;
  Finish(r);
  r.passed = r.passed && worst_residual <= 1e-10;
  return r;
}

CheckResult CheckGreedy(std::uint64_t seed, int trials,
                        const ContactValueFn& values) {
  CheckResult r = Start("greedy_knapsack", 1e-9, "abs");
  Rng rng(StreamSeed(seed, kGreedyStream));
  RandomInstanceSpec spec;
  spec.max_helpers = 4;
  spec.max_deadline = 4;
  spec.max_files = 6;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = RandomInstance(spec, rng);
    const auto table = values(inst.mobility, inst.requests, inst.deadline);
    const std::size_t h = static_cast<std::size_t>(
        UniformInt(rng, 0, static_cast<std::int64_t>(inst.num_helpers()) - 1));
    const auto knap = BuildKnapsack(h, inst.helpers, inst.catalog, table);
    const auto greedy = SolveKnapsackGreedy(knap);
    const auto lp = KnapsackLpOracle(knap);
    if (lp.status != LpStatus::kOptimal) {
      r.max_error = INFINITY;
      r.detail = "knapsack LP not optimal";
    } else {
      r.max_error =
          std::max(r.max_error, std::abs(greedy.objective - lp.objective));
    }
    ++r.cases;
  }
  Finish(r);
  return r;
}

CheckResult CheckMonteCarlo(std::uint64_t seed, int trials,
                            std::int64_t samples) {
  CheckResult r = Start("monte_carlo", 1.0, "|exact-mc|/ci");
  Rng rng(StreamSeed(seed, kMcStream));
  int inside = 0;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = ChainInstance(rng);
    const Allocation alloc =
        RandomFeasibleAllocation(inst.helpers, inst.catalog, rng);
    const double exact = FailureProbabilityExact(alloc, inst).p_fail;
    const auto mc = FailureProbabilityMc(
        alloc, inst, samples, StreamSeed(seed, 1000 + static_cast<std::uint64_t>(t)));
    const double diff = std::abs(exact - mc.p_fail);
    // A zero-width interval only arises for p in {0, 1}, where the estimate
    // is exact.
    const double ratio = mc.ci_halfwidth_99 > 0.0 ? diff / mc.ci_halfwidth_99
                         : diff == 0.0            ? 0.0
                                                  : INFINITY;
    if (ratio <= 1.0) ++inside;
    r.max_error = std::max(r.max_error, ratio);
    ++r.cases;
  }
  const int allowed_misses = std::max(1, trials / 20);
  r.passed = trials - inside <= allowed_misses;
  r.detail = std::to_string(inside) + "/" + std::to_string(trials) +
             " inside the 99% interval";
  return r;
}

CheckResult CheckOca(std::uint64_t seed, int trials, int random_allocations) {
  CheckResult r = Start("oca_optimality", 1e-9, "excess");
  Rng rng(StreamSeed(seed, kOcaStream));
  RandomInstanceSpec spec;
  spec.max_helpers = 3;
  spec.max_deadline = 2;
  spec.max_files = 3;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = RandomInstance(spec, rng);
    OcaOptions opts;
    opts.warm_start_from_aca = false;
    const double oca = OcaAllocate(inst, opts).objective;
    double best = FailureProbabilityExact(AcaAllocate(inst), inst).p_fail;
    best = std::min(
        best, FailureProbabilityExact(
                  HuaAllocate(inst.helpers, inst.catalog, inst.requests), inst)
                  .p_fail);
    for (int a = 0; a < random_allocations; ++a) {
      const Allocation alloc =
          RandomFeasibleAllocation(inst.helpers, inst.catalog, rng);
      best = std::min(best, FailureProbabilityExact(alloc, inst).p_fail);
    }
    r.max_error = std::max(r.max_error, oca - best);
    ++r.cases;
  }
  r.max_error = std::max(r.max_error, 0.0);
  Finish(r);
  return r;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

VerifyReport RunVerify(const VerifyOptions& options) {
  if (options.trials < 1) {
    Fail(ErrorCode::kInvalidParameter, "trials must be positive");
  }
  const auto& fn = options.contact_values;
  const std::uint64_t seed = options.seed;
  const int n = options.trials;
  VerifyReport report;
  report.checks.push_back(CheckContactValues(seed, n, fn));
  report.checks.push_back(CheckChainWeights(seed, n, fn));
  report.checks.push_back(CheckStationary(seed, n));
  report.checks.push_back(CheckGreedy(seed, n, fn));
  report.checks.push_back(CheckMonteCarlo(seed, n, options.mc_samples));
  report.checks.push_back(CheckOca(seed, n, options.random_allocations));
  return report;
}

std::string FormatVerifyReport(const VerifyReport& report) {
  std::ostringstream out;
  char line[256];
  for (const CheckResult& c : report.checks) {
    std::snprintf(line, sizeof line,
                  "%s %-16s cases=%-4d max_error=%-10.3g tolerance=%-8.3g %s",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.cases,
                  c.max_error, c.tolerance, c.metric.c_str());
    out << line;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  out << (report.passed() ? "verify: all checks passed\n"
                          : "verify: FAILED\n");
  return out.str();
}

}  // namespace mobcache

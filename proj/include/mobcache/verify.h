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

// Seeded self-checks that compare each fast routine with an independent
// slow one. The command-line verify subcommand and the acceptance driver
// both run these.

#ifndef MOBCACHE_VERIFY_H_
#define MOBCACHE_VERIFY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mobcache/model.h"
#include "mobcache/walks.h"

namespace mobcache {

// The contact value routine under test. Tests swap in a corrupted one to
// confirm that the checks notice.
using ContactValueFn = std::function<ContactValueTable(
    const MobilityModel&, const RequestModel&, int)>;

struct CheckResult {
  std::string name;
  int cases = 0;
  // Worst deviation seen, in the unit named by `metric`.
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string metric;
  bool passed = false;
  std::string detail;
};

// Closed-form contact values vs brute-force walk enumeration on instances
// with n <= 4, d <= 4, |O| <= 3.
CheckResult CheckContactValues(std::uint64_t seed, int trials,
                               const ContactValueFn& values);

// Expected downloadable weight vs the auxiliary-chain walk expectation for
// alpha in {0.25, 0.5, 0.75}, on random feasible allocations.
CheckResult CheckChainWeights(std::uint64_t seed, int trials,
                              const ContactValueFn& values);

// Stationary residual and root mass 1/(1 + alpha d) for the same chains.
CheckResult CheckStationary(std::uint64_t seed, int trials);

// Greedy knapsack vs its LP on one helper of instances with |O| <= 6,
// d <= 4.
CheckResult CheckGreedy(std::uint64_t seed, int trials,
                        const ContactValueFn& values);

// Exact vs Monte Carlo failure probability. Passes when at most one case in
// twenty falls outside the reported 99% interval.
CheckResult CheckMonteCarlo(std::uint64_t seed, int trials,
                            std::int64_t samples);

// OCA against ACA, HUA and random feasible allocations on instances with
// n <= 3, d <= 2, |O| <= 3.
CheckResult CheckOca(std::uint64_t seed, int trials, int random_allocations);

struct VerifyOptions {
  std::uint64_t seed = 1;
  int trials = 20;
  std::int64_t mc_samples = 100'000;
  int random_allocations = 200;
  ContactValueFn contact_values = ContactValues;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

VerifyReport RunVerify(const VerifyOptions& options);

// One line per check, then an overall verdict.
std::string FormatVerifyReport(const VerifyReport& report);

}  // namespace mobcache

#endif  // MOBCACHE_VERIFY_H_

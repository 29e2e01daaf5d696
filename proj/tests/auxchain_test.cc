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

#include "mobcache/auxchain.h"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "mobcache/aca.h"
#include "mobcache/error.h"
#include "mobcache/rng.h"
#include "mobcache/synthetic.h"
#include "test_util.h"

namespace mobcache {
namespace {

using testing::AllSequences;
using testing::Desk1;
using testing::SequenceProbability;

DownloadSchedule ScheduleFor(const Allocation& x, const Instance& inst) {
  return ComputeDownloadSchedule(x, inst.helpers, inst.catalog, inst.deadline);
}

Allocation DeskAlloc(double a, double b) {
  return Allocation(Matrix::FromRows({{a}, {b}}));
}

Instance FullSupport(std::size_t n, int d, std::size_t files) {
  std::vector<double> init(n, 1.0 / static_cast<double>(n));
  Matrix trans(n, n, 1.0 / static_cast<double>(n));
  Matrix req(n, files, 1.0 / static_cast<double>(files));
  return Instance{MobilityModel(init, trans), RequestModel(req),
                  HelperSet::Uniform(n, 10, 5),
                  Catalog(std::vector<std::int64_t>(files, 10)), d};
}

// pi E by power iteration from the uniform vector.
std::vector<double> PowerIteration(const AuxChain& chain, int iters) {
  const std::size_t s = chain.num_states();
  std::vector<double> pi(s, 1.0 / static_cast<double>(s)), next(s);
  for (int it = 0; it < iters; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < s; ++u) {
      for (const auto& [v, p] : chain.transitions(u)) next[v] += pi[u] * p;
    }
    pi.swap(next);
  }
  return pi;
}

TEST(AuxChainTest, StateCountBeforePruning) {
  const Instance inst = FullSupport(2, 3, 2);
  const AuxChain chain = BuildAuxChain(inst.mobility, inst.requests,
                                       ScheduleFor(Allocation(2, 2), inst), 0.5);
  EXPECT_EQ(chain.unpruned_state_count(), 29u);
  EXPECT_EQ(chain.num_states(), 29u);
  const Instance tiny = FullSupport(1, 1, 1);
  const AuxChain small = BuildAuxChain(tiny.mobility, tiny.requests,
                                       ScheduleFor(Allocation(1, 1), tiny), 0.5);
  EXPECT_EQ(small.num_states(), 2u);
}

TEST(AuxChainTest, PruningDropsZeroBranches) {
  const Instance desk = Desk1();
  const MobilityModel sticky({1.0, 0.0},
                             Matrix::FromRows({{1.0, 0.0}, {0.0, 1.0}}));
  const AuxChain chain = BuildAuxChain(sticky, desk.requests,
                                       ScheduleFor(DeskAlloc(1, 1), desk), 0.5);
  EXPECT_EQ(chain.unpruned_state_count(), 7u);
  EXPECT_EQ(chain.num_states(), 3u);  // root, (1), (1,1)
  AuxChainOptions keep;
  keep.prune_unreachable = false;
  const AuxChain full = BuildAuxChain(
      sticky, desk.requests, ScheduleFor(DeskAlloc(1, 1), desk), 0.5, keep);
  EXPECT_EQ(full.num_states(), 7u);
}

TEST(AuxChainTest, StructuralInvariants) {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = RandomInstance({}, rng);
    const Allocation x = RandomFeasibleAllocation(inst.helpers, inst.catalog, rng);
    const double alpha = 0.3;
    const AuxChain chain =
        BuildAuxChain(inst.mobility, inst.requests, ScheduleFor(x, inst), alpha);
    double phi_sum = 0.0;
    for (std::size_t s = 0; s < chain.num_states(); ++s) {
      const AuxState& st = chain.state(s);
      if (st.level != 1) {
        EXPECT_EQ(chain.phi(s), 0.0);
      }
      phi_sum += chain.phi(s);
      double row = 0.0;
      for (const auto& [v, p] : chain.transitions(s)) row += p;
      EXPECT_NEAR(row, 1.0, 1e-12);
      if (st.level == inst.deadline) {
        ASSERT_EQ(chain.transitions(s).size(), 1u);
        EXPECT_EQ(chain.transitions(s)[0].first, 0u);
      }
    }
    EXPECT_NEAR(phi_sum, 1.0, 1e-12);
    EXPECT_EQ(chain.transitions(0).front().first, 0u);
    EXPECT_DOUBLE_EQ(chain.transitions(0).front().second, 1.0 - alpha);
  }
}

TEST(AuxChainTest, WeightsCountEarlierContacts) {
  const Instance desk = Desk1();
  const AuxChain chain = BuildAuxChain(desk.mobility, desk.requests,
                                       ScheduleFor(DeskAlloc(1, 1), desk), 0.5);
  const std::size_t first = chain.Child(0, 0);  // file 0, helper 0
  const std::size_t again = chain.Child(first, 0);
  const std::size_t other = chain.Child(first, 1);
  EXPECT_DOUBLE_EQ(chain.state(first).weight, 0.5);
  EXPECT_DOUBLE_EQ(chain.state(again).weight, 0.5);  // second contact
  EXPECT_DOUBLE_EQ(chain.state(other).weight, 0.5);
  const AuxChain half = BuildAuxChain(
      desk.mobility, desk.requests, ScheduleFor(DeskAlloc(0.5, 0.5), desk), 0.5);
  EXPECT_DOUBLE_EQ(half.state(half.Child(half.Child(0, 0), 0)).weight, 0.0);
}

TEST(AuxChainTest, DeskWalksMatchBaseModel) {
  const Instance desk = Desk1();
  const AuxChain chain = BuildAuxChain(desk.mobility, desk.requests,
                                       ScheduleFor(DeskAlloc(1, 1), desk), 0.5);
  std::map<std::vector<std::size_t>, double> chain_paths;
  for (std::size_t s = 0; s < chain.num_states(); ++s) {
    if (chain.phi(s) == 0.0) continue;
    for (const auto& [v, p] : chain.transitions(s)) {
      chain_paths[{chain.state(s).helper, chain.state(v).helper}] +=
          chain.phi(s) * p;
    }
  }
  ASSERT_EQ(chain_paths.size(), 4u);
  for (const auto& seq : AllSequences(2, 2)) {
    EXPECT_NEAR(chain_paths[seq], SequenceProbability(desk.mobility, seq), 1e-15);
  }
}

TEST(StationaryTest, RootMassFormula) {
  const Instance inst = FullSupport(2, 3, 2);
  const auto sched = ScheduleFor(Allocation(2, 2), inst);
  const AuxChain half = BuildAuxChain(inst.mobility, inst.requests, sched, 0.5);
  const auto pi = StationaryDistribution(half);
  EXPECT_NEAR(pi[0], 0.4, 1e-12);
  EXPECT_LE(StationaryResidual(half, pi), 1e-10);
  double sum = 0.0;
  for (double v : pi) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);

  AuxChainOptions unit;
  unit.allow_unit_alpha = true;
  const AuxChain one =
      BuildAuxChain(inst.mobility, inst.requests, sched, 1.0, unit);
  EXPECT_NEAR(StationaryDistribution(one)[0], 0.25, 1e-12);
  EXPECT_THROW(BuildAuxChain(inst.mobility, inst.requests, sched, 1.0), Error);
  EXPECT_THROW(BuildAuxChain(inst.mobility, inst.requests, sched, 0.0), Error);
}

TEST(StationaryTest, PathProductsMatchPowerIteration) {
  const Instance desk = Desk1();
  const AuxChain chain = BuildAuxChain(
      desk.mobility, desk.requests, ScheduleFor(DeskAlloc(0.5, 0.5), desk), 0.5);
  const auto pi = StationaryDistribution(chain);
  const auto power = PowerIteration(chain, 5000);
  for (std::size_t s = 0; s < pi.size(); ++s) {
    EXPECT_NEAR(pi[s], power[s], 1e-10);
  }
}

TEST(StationaryTest, RandomChainsHitFormula) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const Instance inst = RandomInstance({}, rng);
    const auto sched =
        ScheduleFor(RandomFeasibleAllocation(inst.helpers, inst.catalog, rng), inst);
    for (double alpha : {0.25, 0.5, 0.75}) {
      const AuxChain chain =
          BuildAuxChain(inst.mobility, inst.requests, sched, alpha);
      const auto pi = StationaryDistribution(chain);
      EXPECT_NEAR(pi[0], 1.0 / (1.0 + alpha * inst.deadline), 1e-12);
      EXPECT_LE(StationaryResidual(chain, pi), 1e-10);
      EXPECT_GT(PhiNorm(chain, pi), 0.0);
    }
  }
}

TEST(BoundValueTest, Examples) {
  EXPECT_DOUBLE_EQ(BoundValue(1.0 / 3.0, 3, 2.0, 1.0, 1.5), 3.0);
  EXPECT_LT(BoundValue(0.9, 3, 1, 1, 1), BoundValue(0.5, 3, 1, 1, 1));
  try {
    BoundValue(0.2, 3, 1, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
}

TEST(BoundValueTest, LargerWeightGivesSmallerBound) {
  Rng rng(31);
  int compared = 0;
  for (int t = 0; t < 200; ++t) {
    const Instance inst = RandomInstance({}, rng);
    const auto values =
        ContactValues(inst.mobility, inst.requests, inst.deadline);
    const double mu1 = ExpectedWeight(
        ScheduleFor(RandomFeasibleAllocation(inst.helpers, inst.catalog, rng), inst),
        values);
    const double mu2 = ExpectedWeight(
        ScheduleFor(RandomFeasibleAllocation(inst.helpers, inst.catalog, rng), inst),
        values);
    const double lo = std::min(mu1, mu2), hi = std::max(mu1, mu2);
    if (!(hi > lo) || lo * inst.deadline < 1.0) continue;
    ++compared;
    EXPECT_LT(BoundValue(hi, inst.deadline, 1, 1, 1),
              BoundValue(lo, inst.deadline, 1, 1, 1));
  }
  EXPECT_GT(compared, 10);
}

TEST(ChainWeightTest, DeskAndZero) {
  const Instance desk = Desk1();
  const AuxChain chain = BuildAuxChain(
      desk.mobility, desk.requests, ScheduleFor(DeskAlloc(0.5, 0.5), desk), 0.5);
  EXPECT_NEAR(ExpectedWeightViaChain(chain), 0.75, 1e-15);
  const AuxChain zero = BuildAuxChain(desk.mobility, desk.requests,
                                      ScheduleFor(DeskAlloc(0, 0), desk), 0.5);
  EXPECT_EQ(ExpectedWeightViaChain(zero), 0.0);
}

TEST(ChainWeightTest, MatchesExpectedWeightAtEveryAlpha) {
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const Instance inst = RandomInstance({}, rng);
    const auto sched =
        ScheduleFor(RandomFeasibleAllocation(inst.helpers, inst.catalog, rng), inst);
    const double direct = ExpectedWeight(
        sched, ContactValues(inst.mobility, inst.requests, inst.deadline));
    for (double alpha : {0.25, 0.5, 0.75}) {
      const AuxChain chain =
          BuildAuxChain(inst.mobility, inst.requests, sched, alpha);
      EXPECT_NEAR(ExpectedWeightViaChain(chain), direct, 1e-10);
    }
  }
}

TEST(AuxChainTest, CapAndDump) {
  const Instance inst = FullSupport(4, 4, 3);
  AuxChainOptions tight;
  tight.max_states = 100;
  try {
    BuildAuxChain(inst.mobility, inst.requests,
                  ScheduleFor(Allocation(4, 3), inst), 0.5, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLarge);
  }
  const Instance desk = Desk1();
  const AuxChain chain = BuildAuxChain(desk.mobility, desk.requests,
                                       ScheduleFor(DeskAlloc(1, 1), desk), 0.5);
  EXPECT_FALSE(chain.DebugDump().empty());
}

}  // namespace
}  // namespace mobcache

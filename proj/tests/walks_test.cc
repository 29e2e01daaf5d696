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

#include "mobcache/walks.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "mobcache/error.h"
#include "mobcache/rng.h"
#include "mobcache/synthetic.h"
#include "test_util.h"

namespace mobcache {
namespace {

using testing::AllSequences;
using testing::Desk1;
using testing::SequenceProbability;

// Paths i -> x_1 .. x_l with x_l = j and no earlier x_t = j.
double FirstPassageBrute(const MobilityModel& m, std::size_t i, std::size_t j,
                         int l) {
  double total = 0.0;
  for (const auto& seq : AllSequences(m.num_helpers(), l)) {
    if (seq.back() != j) continue;
    if (std::find(seq.begin(), seq.end() - 1, j) != seq.end() - 1) continue;
    double p = m.trans(i, seq[0]);
    for (std::size_t t = 1; t < seq.size(); ++t) p *= m.trans(seq[t - 1], seq[t]);
    total += p;
  }
  return total;
}

// P[file i requested and helper h visited >= k times], by sequences.
double ContactBrute(const Instance& inst, std::size_t h, std::size_t i, int k) {
  double total = 0.0;
  for (const auto& seq : AllSequences(inst.num_helpers(), inst.deadline)) {
    const auto visits = std::count(seq.begin(), seq.end(), h);
    if (visits >= k) {
      total += SequenceProbability(inst.mobility, seq) *
               inst.requests.prob(seq[0], i);
    }
  }
  return total;
}

TEST(WalkProbabilityTest, Examples) {
  const Instance desk = Desk1();
  const std::vector<std::size_t> w{0, 1};
  EXPECT_DOUBLE_EQ(WalkProbability(desk.mobility, w), 0.25);
  const std::vector<std::size_t> single{1};
  EXPECT_DOUBLE_EQ(WalkProbability(desk.mobility, single), 0.5);
  const MobilityModel blocked({1.0, 0.0},
                              Matrix::FromRows({{1.0, 0.0}, {0.0, 1.0}}));
  const std::vector<std::size_t> through{0, 1};
  EXPECT_EQ(WalkProbability(blocked, through), 0.0);
}

TEST(EnumerateWalksTest, DeskHasFourQuarterWalks) {
  const auto walks = EnumerateWalks(Desk1().mobility, 2);
  ASSERT_EQ(walks.size(), 4u);
  const std::vector<std::vector<std::size_t>> order{
      {0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (std::size_t w = 0; w < 4; ++w) {
    EXPECT_EQ(walks[w].walk.steps, order[w]);
    EXPECT_DOUBLE_EQ(walks[w].probability, 0.25);
  }
}

TEST(EnumerateWalksTest, SingleHelperSingleWalk) {
  const MobilityModel one({1.0}, Matrix::FromRows({{1.0}}));
  for (int d = 1; d <= 5; ++d) {
    const auto walks = EnumerateWalks(one, d);
    ASSERT_EQ(walks.size(), 1u);
    EXPECT_EQ(walks[0].walk.steps, std::vector<std::size_t>(d, 0));
    EXPECT_DOUBLE_EQ(walks[0].probability, 1.0);
  }
}

TEST(EnumerateWalksTest, ZeroRowPrunesWalks) {
  const MobilityModel m({0.2, 0.3, 0.5},
                        Matrix::FromRows({{0.0, 0.0, 1.0},
                                          {0.3, 0.3, 0.4},
                                          {0.5, 0.25, 0.25}}));
  const auto walks = EnumerateWalks(m, 2);
  EXPECT_LT(walks.size(), 9u);
  double sum = 0.0;
  for (const auto& w : walks) {
    EXPECT_GT(w.probability, 0.0);
    sum += w.probability;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  for (std::size_t w = 1; w < walks.size(); ++w) {
    EXPECT_LT(walks[w - 1].walk.steps, walks[w].walk.steps);
  }
}

TEST(EnumerateWalksTest, RandomModelsSumToOneAndMatchSequences) {
  Rng rng(5);
  RandomInstanceSpec spec;
  spec.max_helpers = 4;
  spec.max_deadline = 4;
  for (int t = 0; t < 30; ++t) {
    const Instance inst = RandomInstance(spec, rng);
    const auto walks = EnumerateWalks(inst.mobility, inst.deadline);
    double sum = 0.0;
    std::size_t nonzero = 0;
    for (const auto& seq : AllSequences(inst.num_helpers(), inst.deadline)) {
      if (SequenceProbability(inst.mobility, seq) > 0.0) ++nonzero;
    }
    for (const auto& w : walks) sum += w.probability;
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_EQ(walks.size(), nonzero);
  }
}

TEST(EnumerateWalksTest, CapRaisesTooLarge) {
  const MobilityModel m = GridMobilityModel(10, 0.5, 1);
  try {
    EnumerateWalks(m, 8, 1000);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLarge);
  }
  EXPECT_EQ(CountWalks(10, 8), 100'000'000u);
  EXPECT_EQ(CountWalks(1000, 10), UINT64_MAX);
}

TEST(FirstPassageTest, DeskValues) {
  const MobilityModel m = Desk1().mobility;
  EXPECT_DOUBLE_EQ(FirstPassage(m, 0, 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(FirstPassage(m, 0, 1, 2), 0.25);
}

TEST(FirstPassageTest, MatchesPathEnumeration) {
  Rng rng(17);
  RandomInstanceSpec spec;
  spec.max_helpers = 4;
  for (int t = 0; t < 20; ++t) {
    const Instance inst = RandomInstance(spec, rng);
    const FirstPassageTable table(inst.mobility, 5);
    for (std::size_t i = 0; i < inst.num_helpers(); ++i) {
      for (std::size_t j = 0; j < inst.num_helpers(); ++j) {
        for (int l = 1; l <= 5; ++l) {
          EXPECT_NEAR(table(i, j, l), FirstPassageBrute(inst.mobility, i, j, l),
                      1e-14);
        }
      }
    }
  }
}

TEST(FirstPassageTest, TotalMassAtMostOne) {
  const MobilityModel m = GridMobilityModel(6, 0.3, 4);
  const FirstPassageTable table(m, 50);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      double s = 0.0;
      for (int l = 1; l <= 50; ++l) s += table(i, j, l);
      EXPECT_LE(s, 1.0 + 1e-12);
    }
  }
}

TEST(ContactValuesTest, DeskValues) {
  const Instance desk = Desk1();
  const auto v = ContactValues(desk.mobility, desk.requests, 2);
  EXPECT_NEAR(v(0, 0, 1), 0.75, 1e-15);
  EXPECT_NEAR(v(0, 0, 2), 0.25, 1e-15);
  EXPECT_EQ(v(0, 0, 3), 0.0);
  const auto o = ContactValueOracle(desk.mobility, desk.requests, 2);
  EXPECT_LE(v.MaxAbsDiff(o), 1e-12);
}

TEST(ContactValuesTest, SingleHelperEqualsRequests) {
  const MobilityModel one({1.0}, Matrix::FromRows({{1.0}}));
  const RequestModel req(Matrix::FromRows({{0.2, 0.8}}));
  const auto o = ContactValueOracle(one, req, 3);
  const auto v = ContactValues(one, req, 3);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_DOUBLE_EQ(o(0, 0, k), 0.2);
    EXPECT_DOUBLE_EQ(o(0, 1, k), 0.8);
    EXPECT_NEAR(v(0, 1, k), 0.8, 1e-15);
  }
}

TEST(ContactValuesTest, MatchesSequenceBruteForce) {
  Rng rng(23);
  RandomInstanceSpec spec;
  spec.max_helpers = 4;
  spec.max_deadline = 4;
  for (int t = 0; t < 40; ++t) {
    const Instance inst = RandomInstance(spec, rng);
    const auto v = ContactValues(inst.mobility, inst.requests, inst.deadline);
    for (std::size_t h = 0; h < inst.num_helpers(); ++h) {
      for (std::size_t i = 0; i < inst.num_files(); ++i) {
        for (int k = 1; k <= inst.deadline; ++k) {
          EXPECT_NEAR(v(h, i, k), ContactBrute(inst, h, i, k), 1e-12);
        }
      }
    }
  }
}

TEST(ContactValuesTest, MonotoneAndBounded) {
  const MobilityModel m = GridMobilityModel(9, 0.5, 2);
  const auto pop = BuildZipfMandelbrot(5, 1.0, 2.0);
  const RequestModel req = UniformRequestModel(pop, 9);
  const auto v = ContactValues(m, req, 5);
  for (std::size_t h = 0; h < 9; ++h) {
    double first = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      first += v(h, i, 1);
      for (int k = 1; k <= 5; ++k) {
        EXPECT_GE(v(h, i, k), 0.0);
        EXPECT_LE(v(h, i, k), 1.0);
        if (k > 1) {
          EXPECT_LE(v(h, i, k), v(h, i, k - 1) + 1e-15);
        }
      }
    }
    EXPECT_LE(first, 1.0 + 1e-12);
  }
}

}  // namespace
}  // namespace mobcache

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

#include <cmath>

#include <gtest/gtest.h>

#include "mobcache/error.h"
#include "mobcache/synthetic.h"

namespace mobcache {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInternal;
}

TEST(ZipfTest, TwoFilesUnitShape) {
  const auto p = BuildZipfMandelbrot(2, 1.0, 0.0);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p[1], 1.0 / 3.0, 1e-15);
}

TEST(ZipfTest, SingleFile) {
  const auto p = BuildZipfMandelbrot(1, 2.5, 10.0);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
}

TEST(ZipfTest, HundredFilesShiftTen) {
  const auto p = BuildZipfMandelbrot(100, 1.0, 10.0);
  double z = 0.0;
  for (int r = 1; r <= 100; ++r) z += 1.0 / (r + 10.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += p[i];
    EXPECT_NEAR(p[i], 1.0 / (static_cast<double>(i) + 11.0) / z, 1e-15);
    if (i > 0) {
      EXPECT_LT(p[i], p[i - 1]);
    }
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(ZipfTest, RejectsNonPositiveShape) {
  EXPECT_EQ(CodeOf([] { BuildZipfMandelbrot(3, 0.0, 1.0); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([] { BuildZipfMandelbrot(3, -1.0, 1.0); }),
            ErrorCode::kInvalidParameter);
}

TEST(RequestModelTest, UniformRowsCopyPopularity) {
  const std::vector<double> pop{0.7, 0.3};
  const RequestModel r = UniformRequestModel(pop, 2);
  EXPECT_EQ(r.per_helper(), Matrix::FromRows({{0.7, 0.3}, {0.7, 0.3}}));
  const std::vector<double> one{1.0};
  const RequestModel s = UniformRequestModel(one, 3);
  EXPECT_EQ(s.per_helper(), Matrix(3, 1, 1.0));
}

TEST(RequestModelTest, LargeReplicationRowsSumToOne) {
  const auto pop = BuildZipfMandelbrot(100, 1.0, 10.0);
  const RequestModel r = UniformRequestModel(pop, 623);
  ASSERT_EQ(r.num_helpers(), 623u);
  for (std::size_t h = 0; h < 623; ++h) {
    double s = 0.0;
    for (double v : r.per_helper().row(h)) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(MobilityModelTest, RenormalizesTinyDrift) {
  const MobilityModel m({0.5 + 1e-12, 0.5},
                        Matrix::FromRows({{1.0, 0.0}, {0.3, 0.7}}));
  EXPECT_NEAR(m.init(0) + m.init(1), 1.0, 1e-15);
}

TEST(MobilityModelTest, RejectsBadRows) {
  EXPECT_EQ(CodeOf([] {
              MobilityModel({1.0}, Matrix::FromRows({{1.1}}));
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] {
              MobilityModel({1.2, -0.2},
                            Matrix::FromRows({{1.0, 0.0}, {0.0, 1.0}}));
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] {
              MobilityModel({1.0, 0.0}, Matrix::FromRows({{1.0}}));
            }),
            ErrorCode::kDimensionMismatch);
}

TEST(CatalogTest, RejectsEmptyAndNonPositive) {
  EXPECT_ANY_THROW(Catalog({}));
  EXPECT_ANY_THROW(Catalog({10, 0}));
  EXPECT_EQ(Catalog({3, 4}).total_bytes(), 7);
}

TEST(HelperSetTest, RejectsBadBudgets) {
  EXPECT_ANY_THROW(HelperSet({1}, {0}));
  EXPECT_ANY_THROW(HelperSet({-1}, {1}));
  EXPECT_ANY_THROW(HelperSet({1, 2}, {1}));
  EXPECT_ANY_THROW(HelperSet({}, {}));
}

TEST(EstimateTest, WorkedThreeEventTrace) {
  const TraceLog trace({{"a", 0.0, 0}, {"a", 50.0, 1}, {"a", 250.0, 1}});
  const MobilityModel m = EstimateFromTrace(trace, 100.0, 2);
  EXPECT_EQ(m.init(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(m.trans(), Matrix::FromRows({{0.0, 1.0}, {0.0, 1.0}}));
}

TEST(EstimateTest, SingleEventGivesSelfLoops) {
  const TraceLog trace({{"u", 10.0, 1}});
  const MobilityModel m = EstimateFromTrace(trace, 100.0, 3);
  EXPECT_EQ(m.init(), (std::vector<double>{0.0, 1.0, 0.0}));
  Matrix eye(3, 3);
  for (std::size_t h = 0; h < 3; ++h) eye(h, h) = 1.0;
  EXPECT_EQ(m.trans(), eye);
}

TEST(EstimateTest, Errors) {
  EXPECT_EQ(CodeOf([] { EstimateFromTrace(TraceLog({}), 100.0, 2); }),
            ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([] {
              EstimateFromTrace(TraceLog({{"u", 0.0, 2}}), 100.0, 2);
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] {
              EstimateFromTrace(TraceLog({{"u", 0.0, -1}}), 100.0, 2);
            }),
            ErrorCode::kInvalidInput);
}

TEST(EstimateTest, UnsortedRecordsAreOrderedPerUser) {
  const TraceLog sorted({{"a", 0.0, 0}, {"a", 50.0, 1}, {"a", 250.0, 1}});
  const TraceLog shuffled({{"a", 250.0, 1}, {"a", 0.0, 0}, {"a", 50.0, 1}});
  EXPECT_EQ(EstimateFromTrace(sorted, 100.0, 2).trans(),
            EstimateFromTrace(shuffled, 100.0, 2).trans());
}

TEST(EstimateTest, DuplicatingUsersLeavesModelUnchanged) {
  const MobilityModel truth = GridMobilityModel(4, 0.5, 3);
  const TraceLog base = SampleTrace(truth, 50, 6, 100.0, 9);
  std::vector<TraceRecord> doubled;
  for (const auto& u : base.users()) {
    for (const auto& r : u.records) {
      doubled.push_back(r);
      doubled.push_back({r.user_id + "_copy", r.timestamp_s, r.helper_id});
    }
  }
  const MobilityModel a = EstimateFromTrace(base, 100.0, 4);
  const MobilityModel b = EstimateFromTrace(TraceLog(doubled), 100.0, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(a.init(i), b.init(i), 1e-15);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(a.trans(i, j), b.trans(i, j), 1e-15);
    }
  }
}

TEST(EstimateTest, RecoversGeneratingModel) {
  const MobilityModel truth = GridMobilityModel(4, 0.5, 11);
  const TraceLog trace = SampleTrace(truth, 100'000, 5, 100.0, 12);
  const MobilityModel est = EstimateFromTrace(trace, 100.0, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(est.init(i), truth.init(i), 0.02);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(est.trans(i, j), truth.trans(i, j), 0.02) << i << "," << j;
    }
  }
}

TEST(InstanceTest, ValidateCatchesShapeMismatch) {
  Instance inst{MobilityModel({1.0}, Matrix::FromRows({{1.0}})),
                RequestModel(Matrix::FromRows({{0.5, 0.5}})),
                HelperSet({1}, {1}), Catalog({1}), 1};
  EXPECT_EQ(CodeOf([&] { inst.Validate(); }), ErrorCode::kDimensionMismatch);
}

TEST(SyntheticTest, GridModelIsStochasticAndLocal) {
  const MobilityModel m = GridMobilityModel(20, 0.4, 1);
  for (std::size_t h = 0; h < 20; ++h) {
    double s = 0.0;
    for (double v : m.trans().row(h)) s += v;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NEAR(m.trans(h, h), 0.4, 1e-12);
  }
}

}  // namespace
}  // namespace mobcache

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

#include "mobcache/io.h"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "mobcache/error.h"

namespace mobcache {
namespace {

ErrorCode TraceError(const std::string& text) {
  std::istringstream in(text);
  try {
    ReadTraceCsv(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::kInternal;
}

TEST(TraceCsvTest, ParsesAndRoundTrips) {
  std::istringstream in(
      "user_id,timestamp_s,helper_id\r\n"
      "a,0,0\n"
      "b,12.5,3\n"
      "a,50,1\n"
      "\n");
  const TraceLog trace = ReadTraceCsv(in);
  ASSERT_EQ(trace.users().size(), 2u);
  EXPECT_EQ(trace.users()[0].user_id, "a");
  EXPECT_EQ(trace.users()[0].records.size(), 2u);
  EXPECT_DOUBLE_EQ(trace.users()[1].records[0].timestamp_s, 12.5);
  EXPECT_EQ(trace.users()[1].records[0].helper_id, 3);

  std::ostringstream out;
  WriteTraceCsv(trace, out);
  EXPECT_EQ(out.str(),
            "user_id,timestamp_s,helper_id\na,0,0\na,50,1\nb,12.5,3\n");
  std::istringstream again(out.str());
  const TraceLog back = ReadTraceCsv(again);
  EXPECT_EQ(back.num_records(), 3u);
}

TEST(TraceCsvTest, RejectsMalformedInput) {
  EXPECT_EQ(TraceError(""), ErrorCode::kInvalidInput);
  EXPECT_EQ(TraceError("user,time,helper\n"), ErrorCode::kInvalidInput);
  EXPECT_EQ(TraceError("user_id,timestamp_s,helper_id\na,1\n"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(TraceError("user_id,timestamp_s,helper_id\na,1,2,3\n"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(TraceError("user_id,timestamp_s,helper_id\na,soon,2\n"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(TraceError("user_id,timestamp_s,helper_id\na,1,x\n"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(TraceError("user_id,timestamp_s,helper_id\n,1,2\n"),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(TraceError("user_id,timestamp_s,helper_id\na,nan,2\n"),
            ErrorCode::kInvalidInput);
}

TEST(ModelJsonTest, RoundTrip) {
  const ModelArtifact art{
      MobilityModel({0.25, 0.75}, Matrix::FromRows({{0.1, 0.9}, {0.3, 0.7}})),
      100.0};
  const std::string text = ModelToJson(art);
  const ModelArtifact back = ModelFromJson(text);
  EXPECT_EQ(back.model.init(), art.model.init());
  EXPECT_EQ(back.model.trans(), art.model.trans());
  EXPECT_EQ(back.slot_duration_s, 100.0);
  EXPECT_EQ(ModelToJson(back), text);
}

TEST(ModelJsonTest, RejectsBadDocuments) {
  EXPECT_THROW(ModelFromJson("{"), Error);
  EXPECT_THROW(ModelFromJson(R"({"n": 2, "init": [1], "trans": [[1]],
                                 "slot_duration_s": 1})"),
               Error);
  EXPECT_THROW(ModelFromJson(R"({"n": 1, "init": [1], "trans": [[1]],
                                 "slot_duration_s": 0})"),
               Error);
  EXPECT_THROW(ModelFromJson(R"({"n": 1, "init": [1], "trans": [[2]],
                                 "slot_duration_s": 1})"),
               Error);
  EXPECT_THROW(ModelFromJson(R"({"n": 1, "init": "x", "trans": [[1]],
                                 "slot_duration_s": 1})"),
               Error);
}

TEST(AllocationJsonTest, RoundTripWithAndWithoutGap) {
  AllocationArtifact art;
  art.allocation = Allocation(Matrix::FromRows({{0.5, 0.125}, {1.0, 0.0}}));
  art.algorithm = "aca";
  art.objective_estimate = 0.3;
  const std::string text = AllocationToJson(art);
  EXPECT_EQ(text.find("gap"), std::string::npos);
  const AllocationArtifact back = AllocationFromJson(text);
  EXPECT_EQ(back.allocation, art.allocation);
  EXPECT_EQ(back.algorithm, "aca");
  EXPECT_EQ(back.objective_estimate, 0.3);
  EXPECT_FALSE(back.gap.has_value());

  art.algorithm = "oca";
  art.gap = 1e-12;
  const AllocationArtifact oca = AllocationFromJson(AllocationToJson(art));
  ASSERT_TRUE(oca.gap.has_value());
  EXPECT_EQ(*oca.gap, 1e-12);
}

TEST(AllocationJsonTest, RejectsShapeMismatch) {
  try {
    AllocationFromJson(R"({"n": 2, "num_files": 1, "x": [[1]],
                           "algorithm": "aca", "objective_estimate": 0})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  EXPECT_THROW(AllocationFromJson(R"({"n": 1, "num_files": 2, "x": [[1, 2, 3]],
                                      "algorithm": "aca",
                                      "objective_estimate": 0})"),
               Error);
}

TEST(EvalReportJsonTest, Fields) {
  const EvalReport r{0.25, EvalMethod::kMonteCarlo, 1000, 0.01};
  const std::string text = EvalReportToJson(r);
  EXPECT_NE(text.find("\"p_fail\": 0.25"), std::string::npos);
  EXPECT_NE(text.find("\"method\": \"mc\""), std::string::npos);
  EXPECT_NE(text.find("\"samples\": 1000"), std::string::npos);
  EXPECT_NE(text.find("\"ci_halfwidth_99\": 0.01"), std::string::npos);
}

TEST(FileIoTest, MissingFileIsIoError) {
  try {
    ReadFile("/nonexistent/dir/file.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  const auto path = std::filesystem::temp_directory_path() / "mobcache_io.txt";
  WriteFile(path, "hello\n");
  EXPECT_EQ(ReadFile(path), "hello\n");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace mobcache

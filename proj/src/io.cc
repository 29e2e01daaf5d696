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

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mobcache/error.h"

namespace mobcache {
namespace {

using nlohmann::json;

constexpr std::string_view kTraceHeader = "user_id,timestamp_s,helper_id";

[[noreturn]] void FailLine(std::size_t line, const std::string& msg) {
  Fail(ErrorCode::kInvalidInput,
       "trace line " + std::to_string(line) + ": " + msg);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

json Parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidInput, std::string(what) + ": " + e.what());
  }
}

// Runs `body` and rewraps JSON type errors as kInvalidInput.
template <typename F>
auto Guard(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidInput, std::string(what) + ": " + e.what());
  }
}

Matrix MatrixFromJson(const json& j) {
  return Matrix::FromRows(j.get<std::vector<std::vector<double>>>());
}

void ExpectSize(std::size_t got, std::size_t want, const std::string& what) {
  if (got != want) {
    Fail(ErrorCode::kDimensionMismatch,
         what + " has " + std::to_string(got) + " entries, expected " +
             std::to_string(want));
  }
}

}  // namespace

TraceLog ReadTraceCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kTraceHeader) {
    FailLine(1, "expected header '" + std::string(kTraceHeader) + "'");
  }
  std::vector<TraceRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = Trim(line);
    if (rest.empty()) continue;
    const std::size_t c1 = rest.find(',');
    const std::size_t c2 =
        c1 == std::string_view::npos ? c1 : rest.find(',', c1 + 1);
    if (c2 == std::string_view::npos ||
        rest.find(',', c2 + 1) != std::string_view::npos) {
      FailLine(line_no, "expected three fields");
    }
    TraceRecord rec;
    rec.user_id = std::string(Trim(rest.substr(0, c1)));
    if (rec.user_id.empty()) FailLine(line_no, "empty user_id");
    const std::string ts(Trim(rest.substr(c1 + 1, c2 - c1 - 1)));
    try {
      std::size_t used = 0;
      rec.timestamp_s = std::stod(ts, &used);
      if (used != ts.size()) throw std::invalid_argument(ts);
    } catch (const std::exception&) {
      FailLine(line_no, "bad timestamp '" + ts + "'");
    }
    if (!std::isfinite(rec.timestamp_s)) {
      FailLine(line_no, "bad timestamp '" + ts + "'");
    }
    const std::string_view hid = Trim(rest.substr(c2 + 1));
    const auto [end, ec] =
        std::from_chars(hid.data(), hid.data() + hid.size(), rec.helper_id);
    if (ec != std::errc() || end != hid.data() + hid.size()) {
      FailLine(line_no, "bad helper_id '" + std::string(hid) + "'");
    }
    records.push_back(std::move(rec));
  }
  return TraceLog(std::move(records));
}

void WriteTraceCsv(const TraceLog& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  char buf[64];
  for (const auto& user : trace.users()) {
    for (const auto& rec : user.records) {
      const auto res = std::to_chars(buf, buf + sizeof buf, rec.timestamp_s);
      out << rec.user_id << ',' << std::string_view(buf, res.ptr - buf) << ','
          << rec.helper_id << '\n';
    }
  }
}

std::string ModelToJson(const ModelArtifact& artifact) {
  const MobilityModel& m = artifact.model;
  json j;
  j["n"] = m.num_helpers();
  j["init"] = m.init();
  j["trans"] = m.trans().ToRows();
  j["slot_duration_s"] = artifact.slot_duration_s;
  return j.dump(2) + "\n";
}

ModelArtifact ModelFromJson(std::string_view text) {
  const json j = Parse(text, "model JSON");
  return Guard("model JSON", [&] {
    const auto n = j.at("n").get<std::size_t>();
    auto init = j.at("init").get<std::vector<double>>();
    Matrix trans = MatrixFromJson(j.at("trans"));
    ExpectSize(init.size(), n, "init");
    ExpectSize(trans.rows(), n, "trans");
    ExpectSize(trans.cols(), n, "trans row");
    const double slot = j.at("slot_duration_s").get<double>();
    if (!(slot > 0.0)) {
      Fail(ErrorCode::kInvalidInput, "slot_duration_s must be positive");
    }
    return ModelArtifact{MobilityModel(std::move(init), std::move(trans)),
                         slot};
  });
}

std::string AllocationToJson(const AllocationArtifact& artifact) {
  json j;
  j["n"] = artifact.allocation.num_helpers();
  j["num_files"] = artifact.allocation.num_files();
  j["x"] = artifact.allocation.x().ToRows();
  j["algorithm"] = artifact.algorithm;
  j["objective_estimate"] = artifact.objective_estimate;
  if (artifact.gap) j["gap"] = *artifact.gap;
  return j.dump(2) + "\n";
}

AllocationArtifact AllocationFromJson(std::string_view text) {
  const json j = Parse(text, "allocation JSON");
  return Guard("allocation JSON", [&] {
    const auto n = j.at("n").get<std::size_t>();
    const auto files = j.at("num_files").get<std::size_t>();
    Matrix x = MatrixFromJson(j.at("x"));
    ExpectSize(x.rows(), n, "x");
    if (n > 0) ExpectSize(x.cols(), files, "x row");
    AllocationArtifact out;
    out.allocation = Allocation(std::move(x));
    out.algorithm = j.at("algorithm").get<std::string>();
    out.objective_estimate = j.at("objective_estimate").get<double>();
    if (j.contains("gap")) out.gap = j.at("gap").get<double>();
    return out;
  });
}

std::string EvalReportToJson(const EvalReport& report) {
  json j;
  j["p_fail"] = report.p_fail;
  j["method"] = EvalMethodName(report.method);
  j["samples"] = report.samples;
  j["ci_halfwidth_99"] = report.ci_halfwidth_99;
  return j.dump(2) + "\n";
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace mobcache

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

// File formats shared by the command-line tools: the contact trace CSV, the
// mobility model JSON, the allocation JSON and the evaluation report JSON.
// Writers are deterministic: the same value always yields the same bytes.

#ifndef MOBCACHE_IO_H_
#define MOBCACHE_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "mobcache/allocation.h"
#include "mobcache/model.h"

namespace mobcache {

// Parse failures throw kInvalidInput with the offending line number.
TraceLog ReadTraceCsv(std::istream& in);
void WriteTraceCsv(const TraceLog& trace, std::ostream& out);

struct ModelArtifact {
  MobilityModel model;
  double slot_duration_s = 0.0;
};

std::string ModelToJson(const ModelArtifact& artifact);
ModelArtifact ModelFromJson(std::string_view text);

struct AllocationArtifact {
  Allocation allocation;
  std::string algorithm;
  double objective_estimate = 0.0;
  std::optional<double> gap;  // certified by branch and bound; oca only
};

std::string AllocationToJson(const AllocationArtifact& artifact);
AllocationArtifact AllocationFromJson(std::string_view text);

std::string EvalReportToJson(const EvalReport& report);

// Whole-file helpers. Missing or unreadable files throw kIo.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace mobcache

#endif  // MOBCACHE_IO_H_

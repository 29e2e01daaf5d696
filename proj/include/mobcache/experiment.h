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

// Experiment plumbing behind the command-line tool: configuration files,
// instance construction, algorithm dispatch and parameter sweeps.
//
// Config JSON layout (paths are relative to the config file):
//
//   {
//     "n": 20, "d": 3, "slot_duration_s": 100,
//     "catalog":  {"num_files": 20, "file_size_bytes": 30000000},
//     "helpers":  {"slot_budget_bytes": 15000000,
//                  "cache_capacity_bytes": 30000000 | [..] |
//                  "cache_fraction": 0.05},
//     "requests": {"zipf_shape": 1.0, "zipf_shift": 10},
//     "mobility": {"synthetic": {"seed": 1, "locality": 0.4}} |
//                 {"model": "model.json"} | {"trace": "trace.csv"},
//     "algorithms": ["hua", "aca", "oca"],
//     "evaluation": {"method": "exact" | "mc", "samples": 100000, "seed": 1},
//     "sweep": {"axis": "cache_fraction" | "zipf_shape", "values": [..]},
//     "oca": {"node_limit": 100000, "merge_equivalent_walks": true,
//             "enumeration_cap": 10000000}
//   }
//
// Budgets and capacities accept one number for every helper or a per-helper
// array. cache_fraction sets every capacity to that share of the catalog.

#ifndef MOBCACHE_EXPERIMENT_H_
#define MOBCACHE_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobcache/allocation.h"
#include "mobcache/io.h"
#include "mobcache/model.h"
#include "mobcache/walks.h"

namespace mobcache {

enum class Algorithm { kHua, kAca, kOca };

std::string_view AlgorithmName(Algorithm algorithm);
// Throws kInvalidParameter for anything but "hua", "aca" or "oca".
Algorithm ParseAlgorithm(std::string_view name);

struct MobilitySource {
  enum class Kind { kSynthetic, kModel, kTrace };
  Kind kind = Kind::kSynthetic;
  std::filesystem::path path;
  std::uint64_t seed = 1;
  double locality = 0.4;
};

struct EvalSpec {
  EvalMethod method = EvalMethod::kExact;
  std::int64_t samples = 100'000;
  std::uint64_t seed = 1;
};

enum class SweepAxis { kCacheFraction, kZipfShape };

std::string_view SweepAxisName(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::kCacheFraction;
  std::vector<double> values;
};

struct ExperimentConfig {
  std::size_t n = 0;
  int d = 3;
  double slot_duration_s = 100.0;
  std::size_t num_files = 0;
  std::int64_t file_size_bytes = 0;
  std::vector<std::int64_t> slot_budgets;       // one per helper
  std::vector<std::int64_t> cache_capacities;   // empty when cache_fraction
  std::optional<double> cache_fraction;
  double zipf_shape = 1.0;
  double zipf_shift = 10.0;
  MobilitySource mobility;
  std::vector<Algorithm> algorithms;
  EvalSpec evaluation;
  std::optional<SweepSpec> sweep;
  std::int64_t oca_node_limit = 100'000;
  bool oca_merge_walks = true;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

// Throws kInvalidInput on malformed JSON, missing fields or values outside
// their domain. Referenced files must exist.
ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::filesystem::path& base_dir);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Synthesizes, loads or estimates the mobility model named by the config.
MobilityModel LoadMobility(const ExperimentConfig& config);

// Capacity per helper for a cache fraction of the whole catalog.
std::int64_t CapacityForFraction(const ExperimentConfig& config,
                                 double fraction);

Instance BuildInstance(const ExperimentConfig& config,
                       const MobilityModel& mobility);

struct AllocationRun {
  AllocationArtifact artifact;
  std::int64_t nodes = 0;  // branch-and-bound nodes, oca only
};

// Dispatches to HUA, ACA or OCA. objective_estimate is the failure
// probability: exact when the walks are enumerable, otherwise the
// configured Monte Carlo estimate. OCA throws kInstanceTooLarge past the
// enumeration cap; `oca_warm_start` seeds its incumbent.
AllocationRun RunAllocation(const Instance& instance, Algorithm algorithm,
                            const ExperimentConfig& config,
                            const std::optional<Allocation>& oca_warm_start =
                                std::nullopt);

EvalReport RunEvaluation(const Allocation& allocation, const Instance& instance,
                         const EvalSpec& spec, std::uint64_t cap);

struct SweepRow {
  SweepAxis axis = SweepAxis::kCacheFraction;
  double axis_value = 0.0;
  Algorithm algorithm = Algorithm::kHua;
  EvalReport report;
  std::optional<double> gap;
};

// One row per (sweep point, configured algorithm), in sweep order. OCA at
// each point starts from the best of ACA, HUA and the previous point's OCA
// allocation when that one is still feasible.
std::vector<SweepRow> RunSweep(const ExperimentConfig& config);

// Header axis_name,axis_value,algorithm,p_fail,ci_halfwidth,method.
std::string SweepToCsv(const std::vector<SweepRow>& rows);

}  // namespace mobcache

#endif  // MOBCACHE_EXPERIMENT_H_

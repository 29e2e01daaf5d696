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

#include "mobcache/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mobcache/aca.h"
#include "mobcache/error.h"
#include "mobcache/oca.h"
#include "mobcache/synthetic.h"

namespace mobcache {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void Bad(const std::string& msg) {
  Fail(ErrorCode::kInvalidInput, "config: " + msg);
}

// A scalar applies to every helper; an array must have one entry each.
std::vector<std::int64_t> PerHelper(const json& j, std::size_t n,
                                    const char* key) {
  if (j.is_array()) {
    auto v = j.get<std::vector<std::int64_t>>();
    if (v.size() != n) {
      Bad(std::string(key) + " needs " + std::to_string(n) + " entries");
    }
    return v;
  }
  return std::vector<std::int64_t>(n, j.get<std::int64_t>());
}

fs::path ExistingPath(const json& j, const fs::path& base_dir) {
  fs::path p = j.get<std::string>();
  if (p.is_relative()) p = base_dir / p;
  if (!fs::exists(p)) Bad("missing file " + p.string());
  return p;
}

MobilitySource ParseMobility(const json& j, const fs::path& base_dir) {
  MobilitySource src;
  if (j.contains("synthetic")) {
    const json& s = j.at("synthetic");
    src.kind = MobilitySource::Kind::kSynthetic;
    src.seed = s.value("seed", std::uint64_t{1});
    src.locality = s.value("locality", 0.4);
    if (!(src.locality >= 0.0 && src.locality <= 1.0)) {
      Bad("mobility.synthetic.locality must lie in [0, 1]");
    }
  } else if (j.contains("model")) {
    src.kind = MobilitySource::Kind::kModel;
    src.path = ExistingPath(j.at("model"), base_dir);
  } else if (j.contains("trace")) {
    src.kind = MobilitySource::Kind::kTrace;
    src.path = ExistingPath(j.at("trace"), base_dir);
  } else {
    Bad("mobility needs one of synthetic, model or trace");
  }
  return src;
}

// Shortest text that parses back to the same double.
std::string Shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CheckFraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) Bad("cache_fraction must lie in (0, 1]");
}

ExperimentConfig ParseConfigJson(const json& j, const fs::path& base_dir) {
  ExperimentConfig c;
  c.n = j.at("n").get<std::size_t>();
  c.d = j.at("d").get<int>();
  c.slot_duration_s = j.value("slot_duration_s", 100.0);
  if (c.n == 0) Bad("n must be positive");
  if (c.d < 1) Bad("d must be at least 1");
  if (!(c.slot_duration_s > 0.0)) Bad("slot_duration_s must be positive");

  const json& cat = j.at("catalog");
  c.num_files = cat.at("num_files").get<std::size_t>();
  c.file_size_bytes = cat.at("file_size_bytes").get<std::int64_t>();
  if (c.num_files == 0) Bad("catalog.num_files must be positive");
  if (c.file_size_bytes <= 0) Bad("catalog.file_size_bytes must be positive");

  const json& hel = j.at("helpers");
  c.slot_budgets = PerHelper(hel.at("slot_budget_bytes"), c.n,
                             "helpers.slot_budget_bytes");
  if (hel.contains("cache_fraction")) {
    c.cache_fraction = hel.at("cache_fraction").get<double>();
    CheckFraction(*c.cache_fraction);
  } else {
    c.cache_capacities = PerHelper(hel.at("cache_capacity_bytes"), c.n,
                                   "helpers.cache_capacity_bytes");
  }

  if (j.contains("requests")) {
    const json& r = j.at("requests");
    c.zipf_shape = r.value("zipf_shape", c.zipf_shape);
    c.zipf_shift = r.value("zipf_shift", c.zipf_shift);
  }
  if (!(c.zipf_shape > 0.0)) Bad("requests.zipf_shape must be positive");
  if (!(c.zipf_shift >= 0.0)) Bad("requests.zipf_shift must be >= 0");

  c.mobility = ParseMobility(j.at("mobility"), base_dir);

  for (const auto& a : j.value("algorithms", json::array({"aca"}))) {
    c.algorithms.push_back(ParseAlgorithm(a.get<std::string>()));
  }

  if (j.contains("evaluation")) {
    const json& e = j.at("evaluation");
    const std::string method = e.value("method", "exact");
    if (method == "exact") {
      c.evaluation.method = EvalMethod::kExact;
    } else if (method == "mc") {
      c.evaluation.method = EvalMethod::kMonteCarlo;
    } else {
      Bad("evaluation.method must be exact or mc");
    }
    c.evaluation.samples = e.value("samples", c.evaluation.samples);
    c.evaluation.seed = e.value("seed", c.evaluation.seed);
    if (c.evaluation.samples <= 0) Bad("evaluation.samples must be positive");
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    SweepSpec sweep;
    const std::string axis = s.at("axis").get<std::string>();
    if (axis == "cache_fraction") {
      sweep.axis = SweepAxis::kCacheFraction;
    } else if (axis == "zipf_shape") {
      sweep.axis = SweepAxis::kZipfShape;
    } else {
      Bad("sweep.axis must be cache_fraction or zipf_shape");
    }
    sweep.values = s.at("values").get<std::vector<double>>();
    if (sweep.values.empty()) Bad("sweep.values is empty");
    for (double v : sweep.values) {
      if (sweep.axis == SweepAxis::kCacheFraction) {
        CheckFraction(v);
      } else if (!(v > 0.0)) {
        Bad("zipf_shape sweep values must be positive");
      }
    }
    c.sweep = std::move(sweep);
  }

  if (j.contains("oca")) {
    const json& o = j.at("oca");
    c.oca_node_limit = o.value("node_limit", c.oca_node_limit);
    c.oca_merge_walks = o.value("merge_equivalent_walks", c.oca_merge_walks);
    c.enumeration_cap = o.value("enumeration_cap", c.enumeration_cap);
    if (c.oca_node_limit < 1) Bad("oca.node_limit must be positive");
  }
  return c;
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kHua: return "hua";
    case Algorithm::kAca: return "aca";
    case Algorithm::kOca: return "oca";
  }
  return "?";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "hua") return Algorithm::kHua;
  if (name == "aca") return Algorithm::kAca;
  if (name == "oca") return Algorithm::kOca;
  Fail(ErrorCode::kInvalidParameter,
       "unknown algorithm '" + std::string(name) + "' (hua, aca, oca)");
}

std::string_view SweepAxisName(SweepAxis axis) {
  return axis == SweepAxis::kCacheFraction ? "cache_fraction" : "zipf_shape";
}

ExperimentConfig ParseConfig(std::string_view json_text,
                             const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    Bad(e.what());
  }
  try {
    return ParseConfigJson(j, base_dir);
  } catch (const json::exception& e) {
    Bad(e.what());
  }
}

ExperimentConfig LoadConfig(const fs::path& path) {
  return ParseConfig(ReadFile(path), path.parent_path());
}

MobilityModel LoadMobility(const ExperimentConfig& config) {
  switch (config.mobility.kind) {
    case MobilitySource::Kind::kSynthetic:
      return GridMobilityModel(config.n, config.mobility.locality,
                               config.mobility.seed);
    case MobilitySource::Kind::kModel: {
      ModelArtifact art = ModelFromJson(ReadFile(config.mobility.path));
      if (art.model.num_helpers() != config.n) {
        Fail(ErrorCode::kDimensionMismatch,
             "model has " + std::to_string(art.model.num_helpers()) +
                 " helpers, config says " + std::to_string(config.n));
      }
      return std::move(art.model);
    }
    case MobilitySource::Kind::kTrace: {
      std::ifstream in(config.mobility.path);
      if (!in) Fail(ErrorCode::kIo, "cannot open " + config.mobility.path.string());
      return EstimateFromTrace(ReadTraceCsv(in), config.slot_duration_s,
                               config.n);
    }
  }
  Fail(ErrorCode::kInternal, "unknown mobility source");
}

std::int64_t CapacityForFraction(const ExperimentConfig& config,
                                 double fraction) {
  const double total = static_cast<double>(config.file_size_bytes) *
                       static_cast<double>(config.num_files);
  return static_cast<std::int64_t>(std::llround(fraction * total));
}

Instance BuildInstance(const ExperimentConfig& config,
                       const MobilityModel& mobility) {
  std::vector<std::int64_t> caps = config.cache_capacities;
  if (config.cache_fraction) {
    caps.assign(config.n, CapacityForFraction(config, *config.cache_fraction));
  }
  const auto pop = BuildZipfMandelbrot(config.num_files, config.zipf_shape,
                                       config.zipf_shift);
  Instance inst{mobility, UniformRequestModel(pop, config.n),
                HelperSet(std::move(caps), config.slot_budgets),
                Catalog(std::vector<std::int64_t>(config.num_files,
                                                  config.file_size_bytes)),
                config.d};
  inst.Validate();
  return inst;
}

EvalReport RunEvaluation(const Allocation& allocation, const Instance& instance,
                         const EvalSpec& spec, std::uint64_t cap) {
  if (spec.method == EvalMethod::kExact) {
    return FailureProbabilityExact(allocation, instance, cap);
  }
  return FailureProbabilityMc(allocation, instance, spec.samples, spec.seed);
}

AllocationRun RunAllocation(const Instance& instance, Algorithm algorithm,
                            const ExperimentConfig& config,
                            const std::optional<Allocation>& oca_warm_start) {
  AllocationRun run;
  run.artifact.algorithm = std::string(AlgorithmName(algorithm));
  const bool enumerable =
      CountWalks(instance.num_helpers(), instance.deadline) <=
      config.enumeration_cap;
  if (algorithm == Algorithm::kOca) {
    if (!enumerable) {
      Fail(ErrorCode::kInstanceTooLarge,
           "oca enumerates n^d walks, more than the cap of " +
               std::to_string(config.enumeration_cap) +
               "; use aca for instances of this size");
    }
    OcaOptions opts;
    opts.build.enumeration_cap = config.enumeration_cap;
    opts.build.merge_equivalent_walks = config.oca_merge_walks;
    opts.bnb.node_limit = config.oca_node_limit;
    opts.bnb.warm_start = oca_warm_start;
    BnbResult res = OcaAllocate(instance, opts);
    run.artifact.allocation = std::move(res.allocation);
    run.artifact.objective_estimate = res.objective;
    run.artifact.gap = res.gap;
    run.nodes = res.nodes;
    return run;
  }
  run.artifact.allocation =
      algorithm == Algorithm::kAca
          ? AcaAllocate(instance)
          : HuaAllocate(instance.helpers, instance.catalog, instance.requests);
  EvalSpec spec = config.evaluation;
  spec.method = enumerable ? EvalMethod::kExact : EvalMethod::kMonteCarlo;
  run.artifact.objective_estimate =
      RunEvaluation(run.artifact.allocation, instance, spec,
                    config.enumeration_cap)
          .p_fail;
  return run;
}

std::vector<SweepRow> RunSweep(const ExperimentConfig& config) {
  if (!config.sweep) Bad("sweep section missing");
  const MobilityModel mobility = LoadMobility(config);
  const SweepSpec& sweep = *config.sweep;
  const auto wants = [&](Algorithm a) {
    return std::find(config.algorithms.begin(), config.algorithms.end(), a) !=
           config.algorithms.end();
  };

  std::vector<SweepRow> rows;
  std::optional<Allocation> previous_oca;
  for (double value : sweep.values) {
    ExperimentConfig point = config;
    if (sweep.axis == SweepAxis::kCacheFraction) {
      point.cache_fraction = value;
    } else {
      point.zipf_shape = value;
    }
    const Instance inst = BuildInstance(point, mobility);

    std::optional<Allocation> aca, hua;
    if (wants(Algorithm::kAca) || wants(Algorithm::kOca)) {
      aca = AcaAllocate(inst);
    }
    if (wants(Algorithm::kHua) || wants(Algorithm::kOca)) {
      hua = HuaAllocate(inst.helpers, inst.catalog, inst.requests);
    }
    std::optional<Allocation> oca;
    std::optional<double> oca_gap;
    if (wants(Algorithm::kOca)) {
      std::vector<Allocation> seeds{*aca, *hua};
      if (previous_oca &&
          CheckFeasible(*previous_oca, inst.helpers, inst.catalog).feasible) {
        seeds.push_back(*previous_oca);
      }
      std::size_t best = 0;
      double best_p = 2.0;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const double p =
            FailureProbabilityExact(seeds[s], inst, config.enumeration_cap)
                .p_fail;
        if (p < best_p) {
          best_p = p;
          best = s;
        }
      }
      AllocationRun run =
          RunAllocation(inst, Algorithm::kOca, point, seeds[best]);
      oca = run.artifact.allocation;
      oca_gap = run.artifact.gap;
      previous_oca = oca;
    }

    for (Algorithm a : config.algorithms) {
      const Allocation& alloc =
          a == Algorithm::kOca ? *oca : a == Algorithm::kAca ? *aca : *hua;
      SweepRow row;
      row.axis = sweep.axis;
      row.axis_value = value;
      row.algorithm = a;
      row.report =
          RunEvaluation(alloc, inst, config.evaluation, config.enumeration_cap);
      if (a == Algorithm::kOca) row.gap = oca_gap;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string SweepToCsv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "axis_name,axis_value,algorithm,p_fail,ci_halfwidth,method\n";
  for (const SweepRow& r : rows) {
    out << SweepAxisName(r.axis) << ',' << Shortest(r.axis_value) << ','
        << AlgorithmName(r.algorithm) << ',' << Shortest(r.report.p_fail)
        << ',' << Shortest(r.report.ci_halfwidth_99) << ','
        << EvalMethodName(r.report.method) << '\n';
  }
  return out.str();
}

}  // namespace mobcache

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

// mobcache: command-line front end.
//
//   mobcache estimate --trace t.csv --slot-duration 100 --n 20 --out m.json
//   mobcache generate-trace --n 20 --users 1000 --slots 50 --out t.csv
//   mobcache allocate --config c.json --algorithm aca --out x.json
//   mobcache evaluate --config c.json --allocation x.json [--model m.json]
//   mobcache sweep --config c.json --out sweep.csv
//   mobcache verify --seed 1 --trials 20
//
// Exit codes: 0 success, 2 invalid input, 3 instance too large,
// 4 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mobcache/error.h"
#include "mobcache/experiment.h"
#include "mobcache/io.h"
#include "mobcache/synthetic.h"
#include "mobcache/verify.h"

namespace {

using namespace mobcache;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitVerifyFailed = 4;
constexpr int kExitInternal = 1;

// Writes to `path`, or to stdout when it is empty.
void Emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    WriteFile(path, content);
  }
}

struct EstimateArgs {
  std::string trace, out;
  double slot_duration = 100.0;
  std::size_t n = 0;
};

int RunEstimate(const EstimateArgs& a) {
  std::ifstream in(a.trace);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + a.trace);
  const TraceLog trace = ReadTraceCsv(in);
  ModelArtifact art{EstimateFromTrace(trace, a.slot_duration, a.n),
                    a.slot_duration};
  Emit(a.out, ModelToJson(art));
  std::cerr << "estimated " << a.n << "-helper model from "
            << trace.num_records() << " records\n";
  return kExitOk;
}

struct TraceArgs {
  std::string out;
  std::size_t n = 20, users = 1000;
  int slots = 50;
  double slot_duration = 100.0, locality = 0.4;
  std::uint64_t seed = 1;
};

int RunGenerateTrace(const TraceArgs& a) {
  const MobilityModel model = GridMobilityModel(a.n, a.locality, a.seed);
  const TraceLog trace = SampleTrace(model, a.users, a.slots, a.slot_duration,
                                     StreamSeed(a.seed, 1));
  std::ostringstream csv;
  WriteTraceCsv(trace, csv);
  Emit(a.out, csv.str());
  return kExitOk;
}

struct AllocateArgs {
  std::string config, algorithm, out;
};

int RunAllocate(const AllocateArgs& a) {
  const ExperimentConfig config = LoadConfig(a.config);
  const Algorithm algorithm = a.algorithm.empty()
                                  ? config.algorithms.front()
                                  : ParseAlgorithm(a.algorithm);
  const Instance inst = BuildInstance(config, LoadMobility(config));
  const AllocationRun run = RunAllocation(inst, algorithm, config);
  Emit(a.out, AllocationToJson(run.artifact));
  std::cerr << run.artifact.algorithm
            << ": objective_estimate=" << run.artifact.objective_estimate;
  if (run.artifact.gap) {
    std::cerr << " gap=" << *run.artifact.gap << " nodes=" << run.nodes;
  }
  std::cerr << '\n';
  return kExitOk;
}

struct EvaluateArgs {
  std::string config, allocation, model, method, out;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int RunEvaluate(const EvaluateArgs& a) {
  ExperimentConfig config = LoadConfig(a.config);
  const MobilityModel mobility =
      a.model.empty() ? LoadMobility(config)
                      : ModelFromJson(ReadFile(a.model)).model;
  if (mobility.num_helpers() != config.n) {
    Fail(ErrorCode::kDimensionMismatch, "model and config disagree on n");
  }
  const Instance inst = BuildInstance(config, mobility);
  const AllocationArtifact art = AllocationFromJson(ReadFile(a.allocation));
  EvalSpec spec = config.evaluation;
  if (a.method == "exact") spec.method = EvalMethod::kExact;
  if (a.method == "mc") spec.method = EvalMethod::kMonteCarlo;
  if (a.samples > 0) spec.samples = a.samples;
  if (a.seed_set) spec.seed = a.seed;
  const EvalReport report =
      RunEvaluation(art.allocation, inst, spec, config.enumeration_cap);
  std::printf("p_fail=%.12g method=%s samples=%lld ci_halfwidth_99=%.6g\n",
              report.p_fail, std::string(EvalMethodName(report.method)).c_str(),
              static_cast<long long>(report.samples), report.ci_halfwidth_99);
  if (!a.out.empty()) WriteFile(a.out, EvalReportToJson(report));
  return kExitOk;
}

struct SweepArgs {
  std::string config, out;
};

int RunSweepCmd(const SweepArgs& a) {
  const ExperimentConfig config = LoadConfig(a.config);
  if (!config.sweep) {
    Fail(ErrorCode::kInvalidInput, "config has no sweep section");
  }
  Emit(a.out, SweepToCsv(RunSweep(config)));
  return kExitOk;
}

struct VerifyArgs {
  VerifyOptions options;
  std::string out;
};

int RunVerifyCmd(const VerifyArgs& a) {
  const VerifyReport report = RunVerify(a.options);
  Emit(a.out, FormatVerifyReport(report));
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInstanceTooLarge:
      return kExitTooLarge;
    case ErrorCode::kInternal:
      return kExitInternal;
    default:
      return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobility-aware coded cache allocation"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "fit a mobility model to a contact trace");
  estimate->add_option("--trace", est.trace, "trace CSV")->required();
  estimate->add_option("--slot-duration", est.slot_duration, "slot length in seconds")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--n", est.n, "number of helpers")->required();
  estimate->add_option("--out", est.out, "model JSON (default stdout)");

  TraceArgs tr;
  auto* gen = app.add_subcommand("generate-trace", "sample a synthetic grid trace");
  gen->add_option("--n", tr.n, "number of helpers");
  gen->add_option("--users", tr.users, "number of users");
  gen->add_option("--slots", tr.slots, "slots per user");
  gen->add_option("--slot-duration", tr.slot_duration, "slot length in seconds");
  gen->add_option("--locality", tr.locality, "self-transition probability");
  gen->add_option("--seed", tr.seed, "random seed");
  gen->add_option("--out", tr.out, "trace CSV (default stdout)");

  AllocateArgs al;
  auto* allocate = app.add_subcommand("allocate", "compute a cache allocation");
  allocate->add_option("--config", al.config, "experiment config JSON")->required();
  allocate->add_option("--algorithm", al.algorithm, "hua, aca or oca");
  allocate->add_option("--out", al.out, "allocation JSON (default stdout)");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "failure probability of an allocation");
  evaluate->add_option("--config", ev.config, "experiment config JSON")->required();
  evaluate->add_option("--allocation", ev.allocation, "allocation JSON")->required();
  evaluate->add_option("--model", ev.model, "model JSON overriding the config");
  evaluate->add_option("--method", ev.method, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  evaluate->add_option("--samples", ev.samples, "Monte Carlo samples");
  evaluate->add_option("--seed", ev.seed, "Monte Carlo seed")
      ->each([&](const std::string&) { ev.seed_set = true; });
  evaluate->add_option("--out", ev.out, "report JSON");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "failure probability along a parameter axis");
  sweep->add_option("--config", sw.config, "experiment config JSON")->required();
  sweep->add_option("--out", sw.out, "CSV report (default stdout)");

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "run the seeded oracle checks");
  verify->add_option("--seed", vf.options.seed, "random seed");
  verify->add_option("--trials", vf.options.trials, "instances per check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--samples", vf.options.mc_samples, "Monte Carlo samples")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", vf.out, "report text (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*estimate) return RunEstimate(est);
    if (*gen) return RunGenerateTrace(tr);
    if (*allocate) return RunAllocate(al);
    if (*evaluate) return RunEvaluate(ev);
    if (*sweep) return RunSweepCmd(sw);
    if (*verify) return RunVerifyCmd(vf);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorCodeName(e.code()) << "): " << e.what()
              << '\n';
    return ExitCodeFor(e.code());
  }
  return kExitInvalid;
}

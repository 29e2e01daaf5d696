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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mobcache/error.h"
#include "mobcache/walks.h"

namespace mobcache {

class AuxChainBuilder {
 public:
  AuxChainBuilder(const MobilityModel& model, const RequestModel& requests,
                  const DownloadSchedule& schedule, bool prune)
      : model_(model), requests_(requests), schedule_(schedule),
        prune_(prune) {}

  AuxChain Build(double alpha, std::uint64_t unpruned) {
    chain_.n_ = model_.num_helpers();
    chain_.files_ = requests_.num_files();
    chain_.d_ = schedule_.deadline();
    chain_.alpha_ = alpha;
    chain_.unpruned_ = unpruned;

    AuxState root;
    root.children.assign(chain_.files_ * chain_.n_, AuxState::kNone);
    chain_.states_.push_back(std::move(root));
    chain_.phi_.push_back(0.0);
    chain_.kernel_.emplace_back();
    if (alpha < 1.0) chain_.kernel_[0].emplace_back(0, 1.0 - alpha);

    for (std::size_t g = 0; g < chain_.files_; ++g) {
      for (std::size_t c = 0; c < chain_.n_; ++c) {
        const double start = requests_.prob(c, g) * model_.init(c);
        if (prune_ && start == 0.0) continue;
        const std::size_t s = AddSubtree(0, g, 1, c);
        chain_.states_[0].children[g * chain_.n_ + c] = s;
        chain_.phi_[s] = start;
        if (alpha * start > 0.0) chain_.kernel_[0].emplace_back(s, alpha * start);
      }
    }
    return std::move(chain_);
  }

 private:
  // Creates the state for `helper` at `level` under `parent` and, recursively,
  // its descendants. Returns the new state's index.
  std::size_t AddSubtree(std::size_t parent, std::size_t file, int level,
                         std::size_t helper) {
    const std::size_t s = chain_.states_.size();
    AuxState st;
    st.parent = parent;
    st.file = file;
    st.level = level;
    st.helper = helper;
    int earlier = 0;
    for (std::size_t a = parent; a != 0; a = chain_.states_[a].parent) {
      if (chain_.states_[a].helper == helper) ++earlier;
    }
    st.weight = schedule_(helper, file, earlier + 1);
    chain_.states_.push_back(std::move(st));
    chain_.phi_.push_back(0.0);
    chain_.kernel_.emplace_back();

    if (level == chain_.d_) {
      chain_.kernel_[s].emplace_back(0, 1.0);
      return s;
    }
    chain_.states_[s].children.assign(chain_.n_, AuxState::kNone);
    for (std::size_t e = 0; e < chain_.n_; ++e) {
      const double p = model_.trans(helper, e);
      if (prune_ && p == 0.0) continue;
      const std::size_t child = AddSubtree(s, file, level + 1, e);
      chain_.states_[s].children[e] = child;
      if (p > 0.0) chain_.kernel_[s].emplace_back(child, p);
    }
    return s;
  }

  const MobilityModel& model_;
  const RequestModel& requests_;
  const DownloadSchedule& schedule_;
  bool prune_;
  AuxChain chain_;
};

AuxChain BuildAuxChain(const MobilityModel& model,
                       const RequestModel& requests,
                       const DownloadSchedule& schedule, double alpha,
                       const AuxChainOptions& options) {
  const bool alpha_ok = options.allow_unit_alpha
                            ? (alpha > 0.0 && alpha <= 1.0)
                            : (alpha > 0.0 && alpha < 1.0);
  if (!alpha_ok) Fail(ErrorCode::kInvalidParameter, "alpha must lie in (0, 1)");
  if (requests.num_helpers() != model.num_helpers() ||
      schedule.num_helpers() != model.num_helpers() ||
      schedule.num_files() != requests.num_files()) {
    Fail(ErrorCode::kDimensionMismatch,
         "model, requests and schedule disagree in shape");
  }
  const std::size_t n = model.num_helpers();
  std::uint64_t per_group = 0;
  for (int l = 1; l <= schedule.deadline(); ++l) {
    const std::uint64_t level = CountWalks(n, l);
    per_group = per_group > UINT64_MAX - level ? UINT64_MAX : per_group + level;
  }
  const std::uint64_t files = requests.num_files();
  const std::uint64_t unpruned =
      per_group > (UINT64_MAX - 1) / files ? UINT64_MAX : 1 + files * per_group;
  if (unpruned > options.max_states) {
    Fail(ErrorCode::kInstanceTooLarge,
         "auxiliary chain would have " + std::to_string(unpruned) +
             " states, cap is " + std::to_string(options.max_states));
  }
  return AuxChainBuilder(model, requests, schedule, options.prune_unreachable)
      .Build(alpha, unpruned);
}

double StationaryResidual(const AuxChain& chain, std::span<const double> pi) {
  std::vector<double> next(chain.num_states(), 0.0);
  for (std::size_t u = 0; u < chain.num_states(); ++u) {
    for (const auto& [v, p] : chain.transitions(u)) next[v] += pi[u] * p;
  }
  double worst = 0.0;
  for (std::size_t v = 0; v < next.size(); ++v) {
    worst = std::max(worst, std::abs(next[v] - pi[v]));
  }
  return worst;
}

std::vector<double> StationaryDistribution(const AuxChain& chain) {
  // States are stored parent-first, so one forward pass multiplies the
  // kernel entries along every root path.
  std::vector<double> pi(chain.num_states(), 0.0);
  pi[0] = 1.0;
  for (std::size_t u = 0; u < chain.num_states(); ++u) {
    if (u != 0 && chain.state(u).level == chain.deadline()) continue;
    for (const auto& [v, p] : chain.transitions(u)) {
      if (v != 0) pi[v] = pi[u] * p;
    }
  }
  double total = 0.0;
  for (double x : pi) total += x;
  for (double& x : pi) x /= total;
  const double residual = StationaryResidual(chain, pi);
  if (!(residual <= 1e-10)) {
    Fail(ErrorCode::kInternal, "stationary distribution check failed, residual " +
                                   std::to_string(residual));
  }
  return pi;
}

double PhiNorm(const AuxChain& chain, std::span<const double> pi) {
  double acc = 0.0;
  for (std::size_t u = 0; u < chain.num_states(); ++u) {
    const double f = chain.phi(u);
    if (f != 0.0) acc += f * f / pi[u];
  }
  return std::sqrt(acc);
}

double BoundValue(double mu, int d, double c, double mixing_time,
                  double phi_norm) {
  const double md = mu * d;
  if (!(md >= 1.0)) {
    Fail(ErrorCode::kDomain, "the bound needs mu * d >= 1, got " +
                                 std::to_string(md));
  }
  if (!(c > 0.0 && mixing_time > 0.0 && phi_norm > 0.0)) {
    Fail(ErrorCode::kInvalidParameter, "bound constants must be positive");
  }
  return c * phi_norm * std::exp(-(md + 1.0 / md - 2.0) / (72.0 * mixing_time));
}

namespace {

double WalkWeights(const AuxChain& chain, std::size_t state, double prob,
                   double weight, int steps_left) {
  weight += chain.state(state).weight;
  if (steps_left == 1) return prob * weight;
  double acc = 0.0;
  for (const auto& [next, p] : chain.transitions(state)) {
    acc += WalkWeights(chain, next, prob * p, weight, steps_left - 1);
  }
  return acc;
}

}  // namespace

double ExpectedWeightViaChain(const AuxChain& chain) {
  double total = 0.0;
  for (std::size_t s = 0; s < chain.num_states(); ++s) {
    if (chain.phi(s) == 0.0) continue;
    total += WalkWeights(chain, s, chain.phi(s), 0.0, chain.deadline());
  }
  return total;
}

std::string AuxChain::DebugDump() const {
  std::ostringstream out;
  out << "# states=" << states_.size() << " n=" << n_ << " files=" << files_
      << " d=" << d_ << " alpha=" << alpha_ << "\n";
  for (std::size_t s = 0; s < states_.size(); ++s) {
    const auto& st = states_[s];
    out << s;
    if (s == 0) {
      out << " root";
    } else {
      out << " file=" << st.file + 1 << " level=" << st.level
          << " helper=" << st.helper + 1 << " weight=" << st.weight;
    }
    if (phi_[s] > 0.0) out << " phi=" << phi_[s];
    out << " ->";
    for (const auto& [t, p] : kernel_[s]) out << ' ' << t << ':' << p;
    out << '\n';
  }
  return out.str();
}

}  // namespace mobcache

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

// Explicit construction of the auxiliary hierarchical Markov chain whose
// d-step walks reproduce (walk, requested file) pairs of the mobility model
// and whose state weights are the fractions downloaded at each contact.
// Only meant for small instances: it is an oracle for the expected-weight
// objective and for the closed-form stationary mass of the root.
//
// Layout: state 0 is the root. For every file g and level l = 1..d there is
// one state per helper sequence (c_1, ..., c_l); the level-1 state (g, c) is
// entered from the root, and (g, c_1..c_l) has children (g, c_1..c_l, e).
//
//   root -> root               1 - alpha
//   root -> (g, c)             alpha * P(g | c) * P_init(c)
//   (g, .., c) -> (g, .., c, e)  M(c, e)
//   level-d state -> root      1

#ifndef MOBCACHE_AUXCHAIN_H_
#define MOBCACHE_AUXCHAIN_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mobcache/allocation.h"
#include "mobcache/model.h"

namespace mobcache {

struct AuxState {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t parent = kNone;  // kNone for the root
  std::size_t file = 0;        // group; unused for the root
  int level = 0;
  std::size_t helper = 0;      // helper contacted at slot `level`
  double weight = 0.0;         // fraction downloaded at this contact
  std::vector<std::size_t> children;  // by helper; kNone where pruned
};

class AuxChain {
 public:
  std::size_t num_states() const { return states_.size(); }
  const AuxState& state(std::size_t s) const { return states_[s]; }
  const std::vector<std::pair<std::size_t, double>>& transitions(
      std::size_t s) const {
    return kernel_[s];
  }
  double phi(std::size_t s) const { return phi_[s]; }
  double alpha() const { return alpha_; }
  int deadline() const { return d_; }
  std::size_t num_helpers() const { return n_; }
  std::size_t num_files() const { return files_; }

  // 1 + |O| * sum_{l=1..d} n^l, the size before pruning.
  std::uint64_t unpruned_state_count() const { return unpruned_; }

  // child(u, c); kNone when absent.
  std::size_t Child(std::size_t s, std::size_t helper) const {
    return states_[s].children[helper];
  }

  // Plain-text adjacency listing for inspection; not a stable format.
  std::string DebugDump() const;

 private:
  friend class AuxChainBuilder;

  std::size_t n_ = 0;
  std::size_t files_ = 0;
  int d_ = 0;
  double alpha_ = 0.5;
  std::uint64_t unpruned_ = 0;
  std::vector<AuxState> states_;
  std::vector<double> phi_;
  std::vector<std::vector<std::pair<std::size_t, double>>> kernel_;
};

struct AuxChainOptions {
  std::uint64_t max_states = 100'000;
  // Drop states the root reaches only with probability zero.
  bool prune_unreachable = true;
  // alpha = 1 removes the root self-loop and makes the chain periodic; only
  // useful for checking the limiting root mass.
  bool allow_unit_alpha = false;
};

// Throws kInstanceTooLarge when the unpruned chain exceeds max_states and
// kInvalidParameter for alpha outside (0, 1).
AuxChain BuildAuxChain(const MobilityModel& model,
                       const RequestModel& requests,
                       const DownloadSchedule& schedule, double alpha,
                       const AuxChainOptions& options = {});

// pi(u) proportional to the product of kernel entries on the root-to-u path.
// Throws kInternal if max |(pi E)(v) - pi(v)| exceeds 1e-10.
std::vector<double> StationaryDistribution(const AuxChain& chain);

// max_v |(pi E)(v) - pi(v)|
double StationaryResidual(const AuxChain& chain, std::span<const double> pi);

// ||phi||_pi = sqrt(sum_u phi(u)^2 / pi(u)).
double PhiNorm(const AuxChain& chain, std::span<const double> pi);

// c * ||phi||_pi * exp(-(mu d + 1/(mu d) - 2) / (72 T)) for mu d >= 1.
// Throws kDomain when mu * d < 1.
double BoundValue(double mu, int d, double c, double mixing_time,
                  double phi_norm);

// Expected total weight of a d-step walk started from phi, by enumerating
// the walks of the chain.
double ExpectedWeightViaChain(const AuxChain& chain);

}  // namespace mobcache

#endif  // MOBCACHE_AUXCHAIN_H_

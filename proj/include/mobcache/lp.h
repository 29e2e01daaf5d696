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

// Dense two-phase primal simplex for small linear programs.
//
//   minimize    c^T x
//   subject to  a_r^T x  (<= | = | >=)  b_r     for every row r
//               lower_j <= x_j <= upper_j       (lower finite)
//
// Variable bounds are handled implicitly (bounded-variable simplex), so they
// do not add tableau rows. Entering and leaving variables follow Bland's
// smallest-index rule, which rules out cycling on degenerate vertices.

#ifndef MOBCACHE_LP_H_
#define MOBCACHE_LP_H_

#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

namespace mobcache {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LpRow {
  std::vector<std::pair<std::size_t, double>> terms;  // (column, coefficient)
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

class LpProblem {
 public:
  LpProblem() = default;
  // `num_vars` variables with zero cost and bounds [0, +inf).
  explicit LpProblem(std::size_t num_vars);

  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  std::size_t AddVariable(double cost, double lower = 0.0,
                          double upper = kInfinity);
  std::size_t AddRow(LpRow row);

  void set_cost(std::size_t j, double cost) { objective_[j] = cost; }
  void set_bounds(std::size_t j, double lower, double upper) {
    lower_[j] = lower;
    upper_[j] = upper;
  }

  double cost(std::size_t j) const { return objective_[j]; }
  double lower(std::size_t j) const { return lower_[j]; }
  double upper(std::size_t j) const { return upper_[j]; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LpRow>& rows() const { return rows_; }

  // Row activity a_r^T x.
  double Activity(std::size_t r, const std::vector<double>& x) const;

  // Throws kInvalidInput on out-of-range columns, non-finite data, infinite
  // lower bounds or lower > upper.
  void Validate() const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;     // meaningful when optimal
  double objective_value = 0.0;
  // Row duals y with c_j - y^T a_j the reduced cost of column j.
  std::vector<double> duals;
  std::int64_t iterations = 0;
};

struct LpOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  // 0 picks a limit proportional to the problem size.
  std::int64_t max_iterations = 0;
};

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace mobcache

#endif  // MOBCACHE_LP_H_

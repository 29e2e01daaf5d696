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

#include "mobcache/lp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mobcache/error.h"

namespace mobcache {

LpProblem::LpProblem(std::size_t num_vars)
    : objective_(num_vars, 0.0),
      lower_(num_vars, 0.0),
      upper_(num_vars, kInfinity) {}

std::size_t LpProblem::AddVariable(double cost, double lower, double upper) {
  objective_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return objective_.size() - 1;
}

std::size_t LpProblem::AddRow(LpRow row) {
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

double LpProblem::Activity(std::size_t r, const std::vector<double>& x) const {
  double acc = 0.0;
  for (const auto& [j, a] : rows_[r].terms) acc += a * x[j];
  return acc;
}

void LpProblem::Validate() const {
  for (std::size_t j = 0; j < num_vars(); ++j) {
    if (!std::isfinite(objective_[j])) {
      Fail(ErrorCode::kInvalidInput, "non-finite objective coefficient");
    }
    if (!std::isfinite(lower_[j])) {
      Fail(ErrorCode::kInvalidInput, "lower bounds must be finite");
    }
    if (std::isnan(upper_[j]) || lower_[j] > upper_[j]) {
      Fail(ErrorCode::kInvalidInput,
           "variable " + std::to_string(j) + " has lower > upper");
    }
  }
  for (const auto& row : rows_) {
    if (!std::isfinite(row.rhs)) {
      Fail(ErrorCode::kInvalidInput, "non-finite right-hand side");
    }
    for (const auto& [j, a] : row.terms) {
      if (j >= num_vars()) {
        Fail(ErrorCode::kInvalidInput, "row references unknown column");
      }
      if (!std::isfinite(a)) {
        Fail(ErrorCode::kInvalidInput, "non-finite constraint coefficient");
      }
    }
  }
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

namespace {

// Dense tableaux above this many entries are refused.
constexpr std::size_t kMaxTableauEntries = 250'000'000;

enum class ColState : std::uint8_t { kBasic, kAtLower, kAtUpper };

// Bounded-variable simplex tableau over the shifted variables y = x - lower,
// 0 <= y <= span. Each row is scaled by +-1 so its right-hand side is
// non-negative.
class Tableau {
 public:
  Tableau(const LpProblem& problem, const LpOptions& options)
      : options_(options), q_(problem.num_vars()), m_(problem.num_rows()) {
    const auto& rows = problem.rows();
    row_sign_.resize(m_);
    slack_sign_.assign(m_, 0);
    slack_col_.assign(m_, kNone);
    art_col_.assign(m_, kNone);

    std::vector<double> rhs(m_);
    std::size_t slacks = 0, artificials = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      double b = rows[r].rhs;
      for (const auto& [j, a] : rows[r].terms) b -= a * problem.lower(j);
      int sign = 1;
      switch (rows[r].sense) {
        case RowSense::kLessEqual:
          slack_sign_[r] = 1;
          sign = b >= 0.0 ? 1 : -1;
          break;
        case RowSense::kGreaterEqual:
          slack_sign_[r] = -1;
          sign = b > 0.0 ? 1 : -1;
          break;
        case RowSense::kEqual:
          sign = b >= 0.0 ? 1 : -1;
          break;
      }
      row_sign_[r] = sign;
      rhs[r] = sign * b;
      if (slack_sign_[r] != 0) ++slacks;
      if (slack_sign_[r] * sign != 1) ++artificials;
    }
    cols_ = q_ + slacks + artificials;
    if (m_ != 0 && cols_ > kMaxTableauEntries / m_) {
      Fail(ErrorCode::kInstanceTooLarge,
           "LP needs a " + std::to_string(m_) + " x " + std::to_string(cols_) +
               " dense tableau");
    }
    t_.assign(m_ * cols_, 0.0);
    span_.assign(cols_, kInfinity);
    state_.assign(cols_, ColState::kAtLower);
    blocked_.assign(cols_, false);
    basis_.assign(m_, kNone);
    beta_ = rhs;
    cost_.assign(cols_, 0.0);

    for (std::size_t j = 0; j < q_; ++j) {
      span_[j] = problem.upper(j) - problem.lower(j);
    }
    std::size_t next = q_;
    for (std::size_t r = 0; r < m_; ++r) {
      for (const auto& [j, a] : rows[r].terms) at(r, j) += row_sign_[r] * a;
      if (slack_sign_[r] != 0) {
        slack_col_[r] = next;
        at(r, next) = row_sign_[r] * slack_sign_[r];
        if (at(r, next) == 1.0) {
          basis_[r] = next;
          state_[next] = ColState::kBasic;
        }
        ++next;
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] != kNone) continue;
      art_col_[r] = next;
      at(r, next) = 1.0;
      basis_[r] = next;
      state_[next] = ColState::kBasic;
      ++next;
    }
    is_artificial_.assign(cols_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      if (art_col_[r] != kNone) is_artificial_[art_col_[r]] = true;
    }
    max_iterations_ = options.max_iterations > 0
                          ? options.max_iterations
                          : static_cast<std::int64_t>(50 * (m_ + cols_)) +
                                10'000;
  }

  LpSolution Solve(const LpProblem& problem) {
    LpSolution out;
    if (artificials() > 0) {
      for (std::size_t j = 0; j < cols_; ++j) {
        cost_[j] = is_artificial_[j] ? 1.0 : 0.0;
      }
      const LpStatus phase1 = Run();
      out.iterations = iterations_;
      if (phase1 == LpStatus::kIterationLimit) {
        out.status = phase1;
        return out;
      }
      double infeasibility = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        if (is_artificial_[basis_[r]]) infeasibility += beta_[r];
      }
      if (infeasibility > options_.feasibility_tolerance) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      DriveOutArtificials();
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      cost_[j] = j < q_ ? problem.cost(j) : 0.0;
    }
    out.status = Run();
    out.iterations = iterations_;
    if (out.status != LpStatus::kOptimal) return out;

    out.values.resize(q_);
    for (std::size_t j = 0; j < q_; ++j) {
      double y = 0.0;
      if (state_[j] == ColState::kAtUpper) y = span_[j];
      out.values[j] = problem.lower(j) + y;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t j = basis_[r];
      if (j < q_) {
        const double y = std::clamp(beta_[r], 0.0, span_[j]);
        out.values[j] = problem.lower(j) + y;
      }
    }
    out.objective_value = 0.0;
    for (std::size_t j = 0; j < q_; ++j) {
      out.objective_value += problem.cost(j) * out.values[j];
    }
    out.duals.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (slack_col_[r] != kNone) {
        out.duals[r] = -reduced_[slack_col_[r]] / slack_sign_[r];
      } else {
        out.duals[r] = -row_sign_[r] * reduced_[art_col_[r]];
      }
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  double& at(std::size_t r, std::size_t c) { return t_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * cols_ + c]; }

  std::size_t artificials() const {
    return static_cast<std::size_t>(
        std::count(is_artificial_.begin(), is_artificial_.end(), true));
  }

  void ComputeReducedCosts() {
    reduced_ = cost_;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &t_[r * cols_];
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * row[j];
    }
    for (std::size_t r = 0; r < m_; ++r) reduced_[basis_[r]] = 0.0;
  }

  // Smallest-index improving column, or kNone at optimality.
  std::size_t ChooseEntering() const {
    const double tol = options_.pivot_tolerance;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (blocked_[j]) continue;
      if (state_[j] == ColState::kAtLower) {
        if (span_[j] > 0.0 && reduced_[j] < -tol) return j;
      } else if (state_[j] == ColState::kAtUpper) {
        if (reduced_[j] > tol) return j;
      }
    }
    return kNone;
  }

  void Pivot(std::size_t pr, std::size_t pc) {
    double* prow = &t_[pr * cols_];
    const double inv = 1.0 / prow[pc];
    nonzeros_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nonzeros_.push_back(j);
      }
    }
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr) continue;
      double* row = &t_[r * cols_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t j : nonzeros_) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
    const double f = reduced_[pc];
    if (f != 0.0) {
      for (std::size_t j : nonzeros_) reduced_[j] -= f * prow[j];
    }
    reduced_[pc] = 0.0;
  }

  LpStatus Run() {
    ComputeReducedCosts();
    const double ptol = options_.pivot_tolerance;
    while (true) {
      if (iterations_ >= max_iterations_) return LpStatus::kIterationLimit;
      const std::size_t enter = ChooseEntering();
      if (enter == kNone) return LpStatus::kOptimal;
      ++iterations_;
      const double dir = state_[enter] == ColState::kAtLower ? 1.0 : -1.0;

      // Ratio test; ties go to the smallest variable index (Bland). The
      // entering variable itself competes through its own bound.
      double best = span_[enter];
      std::size_t leave_row = kNone;
      std::size_t leave_var = enter;
      for (std::size_t r = 0; r < m_; ++r) {
        const double alpha = dir * at(r, enter);
        if (std::abs(alpha) <= ptol) continue;
        const std::size_t var = basis_[r];
        double step;
        if (alpha > 0.0) {
          step = std::max(beta_[r], 0.0) / alpha;
        } else {
          if (span_[var] == kInfinity) continue;
          step = std::max(span_[var] - beta_[r], 0.0) / -alpha;
        }
        if (best == kInfinity) {
          best = step;
          leave_row = r;
          leave_var = var;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, best);
        if (step < best - slack ||
            (step <= best + slack && var < leave_var)) {
          best = step;
          leave_row = r;
          leave_var = var;
        }
      }
      if (best == kInfinity) return LpStatus::kUnbounded;

      if (best != 0.0) {
        for (std::size_t r = 0; r < m_; ++r) {
          const double a = at(r, enter);
          if (a != 0.0) beta_[r] -= dir * best * a;
        }
      }
      if (leave_row == kNone) {
        state_[enter] = state_[enter] == ColState::kAtLower
                            ? ColState::kAtUpper
                            : ColState::kAtLower;
        continue;
      }
      const double entering_value =
          state_[enter] == ColState::kAtLower ? best : span_[enter] - best;
      const double alpha = dir * at(leave_row, enter);
      state_[leave_var] = alpha > 0.0 ? ColState::kAtLower : ColState::kAtUpper;
      Pivot(leave_row, enter);
      basis_[leave_row] = enter;
      state_[enter] = ColState::kBasic;
      beta_[leave_row] = entering_value;
    }
  }

  // After phase 1: swap zero-level artificials out of the basis where
  // possible; rows where that is impossible are redundant and keep their
  // artificial pinned at zero.
  void DriveOutArtificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial_[basis_[r]]) continue;
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_artificial_[j] || state_[j] == ColState::kBasic) continue;
        if (std::abs(at(r, j)) > options_.pivot_tolerance) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) continue;
      const double value =
          state_[enter] == ColState::kAtUpper ? span_[enter] : 0.0;
      const std::size_t leaving = basis_[r];
      Pivot(r, enter);
      basis_[r] = enter;
      state_[enter] = ColState::kBasic;
      state_[leaving] = ColState::kAtLower;
      beta_[r] = value;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_artificial_[j]) {
        blocked_[j] = true;
        span_[j] = 0.0;
      }
    }
  }

  LpOptions options_;
  std::size_t q_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::vector<double> t_;
  std::vector<double> beta_;
  std::vector<double> span_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  std::vector<ColState> state_;
  std::vector<bool> blocked_;
  std::vector<bool> is_artificial_;
  std::vector<std::size_t> basis_;
  std::vector<int> row_sign_;
  std::vector<int> slack_sign_;
  std::vector<std::size_t> slack_col_;
  std::vector<std::size_t> art_col_;
  std::vector<std::size_t> nonzeros_;
  std::int64_t iterations_ = 0;
  std::int64_t max_iterations_ = 0;
};

}  // namespace

LpSolution SolveLp(const LpProblem& problem, const LpOptions& options) {
  problem.Validate();
  Tableau tableau(problem, options);
  return tableau.Solve(problem);
}

}  // namespace mobcache

// Copyright 2026 The Authors.
//
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

// Dense two-phase simplex for small standard-form programs
//
//   minimize c'x  subject to  A x = b,  x >= 0.
//
// Bland's rule is used throughout: the programs solved here are highly
// degenerate and small, so termination matters more than pivot count.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace tilediv::detail {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

class StandardFormLp {
 public:
  StandardFormLp(std::size_t num_rows, std::size_t num_vars)
      : rows_(num_rows), vars_(num_vars), a_(num_rows * num_vars, 0.0),
        b_(num_rows, 0.0), c_(num_vars, 0.0) {}

  double& a(std::size_t r, std::size_t v) { return a_[r * vars_ + v]; }
  double& b(std::size_t r) { return b_[r]; }
  double& c(std::size_t v) { return c_[v]; }

  LpResult solve(double eps = 1e-10) const {
    // Tableau columns: structural vars, one artificial per row, rhs.
    const std::size_t cols = vars_ + rows_ + 1;
    const std::size_t rhs = cols - 1;
    std::vector<double> t((rows_ + 1) * cols, 0.0);
    auto at = [&](std::size_t r, std::size_t k) -> double& {
      return t[r * cols + k];
    };
    std::vector<std::size_t> basis(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const double sign = b_[r] < 0 ? -1.0 : 1.0;
      for (std::size_t v = 0; v < vars_; ++v) at(r, v) = sign * a_[r * vars_ + v];
      at(r, vars_ + r) = 1.0;
      at(r, rhs) = sign * b_[r];
      basis[r] = vars_ + r;
    }
    // Phase 1 objective row holds reduced costs of sum(artificials).
    const std::size_t obj = rows_;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols; ++k) {
        if (k < vars_ || k == rhs) at(obj, k) -= at(r, k);
      }
    }

    auto pivot = [&](std::size_t pr, std::size_t pc) {
      const double inv = 1.0 / at(pr, pc);
      for (std::size_t k = 0; k < cols; ++k) at(pr, k) *= inv;
      at(pr, pc) = 1.0;
      for (std::size_t r = 0; r <= rows_; ++r) {
        if (r == pr) continue;
        const double f = at(r, pc);
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < cols; ++k) at(r, k) -= f * at(pr, k);
        at(r, pc) = 0.0;
      }
      basis[pr] = pc;
    };

    // Returns false when unbounded.
    auto iterate = [&](std::size_t allowed_cols) {
      for (;;) {
        std::size_t enter = allowed_cols;
        for (std::size_t k = 0; k < allowed_cols; ++k) {
          if (at(obj, k) < -eps) {
            enter = k;
            break;
          }
        }
        if (enter == allowed_cols) return true;
        std::size_t leave = rows_;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < rows_; ++r) {
          const double coef = at(r, enter);
          if (coef <= eps) continue;
          const double ratio = at(r, rhs) / coef;
          if (ratio < best - eps ||
              (ratio <= best + eps && leave < rows_ && basis[r] < basis[leave])) {
            if (ratio < best) best = ratio;
            leave = r;
          }
        }
        if (leave == rows_) return false;
        pivot(leave, enter);
      }
    };

    iterate(vars_);
    LpResult result;
    if (-at(obj, rhs) > 1e-7) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis[r] < vars_) continue;
      for (std::size_t k = 0; k < vars_; ++k) {
        if (std::abs(at(r, k)) > 1e-8) {
          pivot(r, k);
          break;
        }
      }
    }

    // Phase 2: price out the real objective over the current basis.
    for (std::size_t k = 0; k < cols; ++k) at(obj, k) = 0.0;
    for (std::size_t v = 0; v < vars_; ++v) at(obj, v) = c_[v];
    for (std::size_t r = 0; r < rows_; ++r) {
      const std::size_t bv = basis[r];
      if (bv >= vars_) continue;
      const double f = at(obj, bv);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < cols; ++k) at(obj, k) -= f * at(r, k);
    }
    // Artificials never re-enter.
    if (!iterate(vars_)) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    result.status = LpStatus::kOptimal;
    result.objective = -at(obj, rhs);
    result.x.assign(vars_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis[r] < vars_) result.x[basis[r]] = at(r, rhs);
    }
    return result;
  }

 private:
  std::size_t rows_;
  std::size_t vars_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> c_;
};

}  // namespace tilediv::detail

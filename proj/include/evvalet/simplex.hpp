// Copyright 2026 The evvalet Authors
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

// Dense tableau simplex for  max c'x  s.t.  Ax <= b, x >= 0  with b >= 0.
//
// The origin is feasible for this class of problems, so a single phase
// suffices. Entering variables follow Dantzig's rule; after a run of
// degenerate pivots the solver switches to Bland's rule until the objective
// moves again, which rules out cycling.

#ifndef EVVALET_SIMPLEX_HPP
#define EVVALET_SIMPLEX_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evvalet/error.hpp"

namespace evvalet::simplex {

struct SparseRow {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
  double rhs = 0.0;
};

struct Options {
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-10;
  /// Consecutive degenerate pivots tolerated before switching to Bland.
  int degenerate_streak = 50;
  /// 0 means 50 * (rows + columns).
  long max_iterations = 0;
};

struct Result {
  std::vector<double> x;
  double objective = 0.0;
  long iterations = 0;
};

/// Throws SolverError on iteration limit or unboundedness.
inline Result maximize(std::span<const double> cost,
                       std::span<const SparseRow> rows,
                       const Options& opt = {}) {
  const int n = static_cast<int>(cost.size());
  const int m = static_cast<int>(rows.size());
  const int width = n + m + 1;  // structural + slack + rhs
  const int rhs = n + m;

  Result res;
  res.x.assign(n, 0.0);
  if (n == 0) return res;

  std::vector<double> tab(static_cast<std::size_t>(m) * width, 0.0);
  auto at = [&](int r, int c) -> double& {
    return tab[static_cast<std::size_t>(r) * width + c];
  };
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    if (rows[r].rhs < 0) {
      throw std::invalid_argument("simplex: negative right-hand side");
    }
    for (auto [col, coef] : rows[r].terms) {
      if (col < 0 || col >= n) {
        throw std::out_of_range("simplex: column index out of range");
      }
      at(r, col) += coef;
    }
    at(r, n + r) = 1.0;
    at(r, rhs) = rows[r].rhs;
    basis[r] = n + r;
  }
  // Reduced costs; a column may enter while its entry is positive.
  std::vector<double> reduced(n + m, 0.0);
  for (int j = 0; j < n; ++j) reduced[j] = cost[j];
  const long limit =
      opt.max_iterations > 0 ? opt.max_iterations : 50L * (m + n + 1);
  int degenerate = 0;
  bool bland = false;
  std::vector<int> nonzero;
  nonzero.reserve(width);

  for (long iter = 0;; ++iter) {
    if (iter >= limit) {
      throw SolverError("simplex: iteration limit reached after " +
                        std::to_string(iter) + " pivots");
    }
    int enter = -1;
    double best = opt.optimality_tol;
    for (int j = 0; j < n + m; ++j) {
      if (reduced[j] > best) {
        enter = j;
        if (bland) break;
        best = reduced[j];
      }
    }
    if (enter < 0) {
      res.iterations = iter;
      break;
    }

    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      const double a = at(r, enter);
      if (a <= opt.pivot_tol) continue;
      const double q = at(r, rhs) / a;
      const bool better = q < ratio - 1e-12;
      const bool tie = !better && q <= ratio + 1e-12;
      if (better || (tie && (bland ? basis[r] < basis[leave]
                                   : a > at(leave, enter)))) {
        leave = r;
        ratio = q;
      }
    }
    if (leave < 0) throw SolverError("simplex: problem is unbounded");

    const double pivot = at(leave, enter);
    nonzero.clear();
    for (int c = 0; c < width; ++c) {
      double& v = at(leave, c);
      if (v != 0.0) {
        v /= pivot;
        nonzero.push_back(c);
      }
    }
    at(leave, enter) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int c : nonzero) at(r, c) -= f * at(leave, c);
      at(r, enter) = 0.0;
      if (at(r, rhs) < 0.0 && at(r, rhs) > -1e-12) at(r, rhs) = 0.0;
    }
    const double f = reduced[enter];
    for (int c : nonzero) {
      if (c < n + m) reduced[c] -= f * at(leave, c);
    }
    reduced[enter] = 0.0;
    const double gain = f * at(leave, rhs);
    basis[leave] = enter;

    if (gain > 1e-12) {
      degenerate = 0;
      bland = false;
    } else if (++degenerate >= opt.degenerate_streak) {
      bland = true;
    }
  }

  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) res.x[basis[r]] = at(r, rhs);
  }
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += cost[j] * res.x[j];
  return res;
}

}  // namespace evvalet::simplex

#endif  // EVVALET_SIMPLEX_HPP

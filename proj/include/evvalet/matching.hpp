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

#ifndef EVVALET_MATCHING_HPP
#define EVVALET_MATCHING_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace evvalet {

/// Maximum-weight bipartite matching on a dense weight matrix
/// (weight[l][r]); edges with weight <= 0 are never used. Returns the
/// matched (left, right) pairs sorted by left index.
///
/// Hungarian algorithm with potentials on the square matrix padded with
/// zero-weight dummies, O(N^3) for N = max(rows, cols).
inline std::vector<std::pair<int, int>> max_weight_bipartite_matching(
    const std::vector<std::vector<double>>& weight) {
  const int rows = static_cast<int>(weight.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(weight[0].size());
  const int n = std::max(rows, cols);
  if (n == 0) return {};
  auto cost = [&](int l, int r) {
    if (l >= rows || r >= cols) return 0.0;
    return -std::max(weight[l][r], 0.0);
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual root of each augmenting search.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match_of_col(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match_of_col[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const int row0 = match_of_col[col0];
      double delta = kInf;
      int col1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = cost(row0 - 1, c - 1) - u[row0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match_of_col[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match_of_col[col0] != 0);
    do {
      const int col1 = way[col0];
      match_of_col[col0] = match_of_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::pair<int, int>> out;
  for (int c = 1; c <= n; ++c) {
    const int l = match_of_col[c] - 1;
    const int r = c - 1;
    if (l < rows && r < cols && weight[l][r] > 0.0) out.emplace_back(l, r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace evvalet

#endif  // EVVALET_MATCHING_HPP

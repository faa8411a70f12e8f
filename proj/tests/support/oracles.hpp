// Copyright 2026 The condage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the library under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <vector>

namespace condage::testing {

struct MixedPoint {
  std::vector<double> numeric;
  std::vector<std::size_t> categorical;
};

inline double mixed_distance(const MixedPoint& x, const MixedPoint& y,
                             const std::vector<double>& wn, const std::vector<double>& wc) {
  double d = 0.0;
  for (std::size_t j = 0; j < x.numeric.size(); ++j) {
    d += wn[j] * (x.numeric[j] - y.numeric[j]) * (x.numeric[j] - y.numeric[j]);
  }
  for (std::size_t j = 0; j < x.categorical.size(); ++j) {
    if (x.categorical[j] != y.categorical[j]) d += wc[j];
  }
  return d;
}

// Cost of one block around its best center: per-coordinate mean for numeric
// features, any modal level for categorical ones.
inline double block_cost(const std::vector<MixedPoint>& pts, const std::vector<std::size_t>& members,
                         const std::vector<double>& wn, const std::vector<double>& wc) {
  if (members.empty()) return 0.0;
  MixedPoint center;
  const std::size_t p = pts[members[0]].numeric.size();
  const std::size_t q = pts[members[0]].categorical.size();
  center.numeric.assign(p, 0.0);
  for (const auto i : members) {
    for (std::size_t j = 0; j < p; ++j) center.numeric[j] += pts[i].numeric[j];
  }
  for (auto& v : center.numeric) v /= static_cast<double>(members.size());
  for (std::size_t j = 0; j < q; ++j) {
    std::map<std::size_t, std::size_t> counts;
    for (const auto i : members) ++counts[pts[i].categorical[j]];
    std::size_t best = 0;
    std::size_t best_count = 0;
    for (const auto& [level, count] : counts) {
      if (count > best_count) {
        best = level;
        best_count = count;
      }
    }
    center.categorical.push_back(best);
  }
  double cost = 0.0;
  for (const auto i : members) cost += mixed_distance(pts[i], center, wn, wc);
  return cost;
}

// Minimum within-cluster cost over every partition into exactly k non-empty
// blocks, enumerated as restricted growth strings.
inline double exhaustive_min_inertia(const std::vector<MixedPoint>& pts, std::size_t k,
                                     const std::vector<double>& wn, const std::vector<double>& wc) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t i, std::size_t used) {
    if (n - i < k - used) return;
    if (i == n) {
      if (used != k) return;
      double cost = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t r = 0; r < n; ++r) {
          if (label[r] == c) members.push_back(r);
        }
        cost += block_cost(pts, members, wn, wc);
      }
      best = std::min(best, cost);
      return;
    }
    for (std::size_t c = 0; c <= used && c < k; ++c) {
      label[i] = c;
      recurse(i + 1, std::max(used, c + 1));
    }
  };
  recurse(0, 0);
  return best;
}

// Mean of `values` per group label.
inline std::map<std::size_t, double> group_mean(const std::vector<std::size_t>& groups,
                                                const std::vector<double>& values) {
  std::map<std::size_t, double> sum;
  std::map<std::size_t, std::size_t> count;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    sum[groups[i]] += values[i];
    ++count[groups[i]];
  }
  for (auto& [g, s] : sum) s /= static_cast<double>(count[g]);
  return sum;
}

// Central difference of f along coordinate `axis`.
template <typename Point, typename F>
double central_difference(F f, Point x, std::size_t axis, double h) {
  Point up = x;
  Point down = x;
  up[axis] += h;
  down[axis] -= h;
  return (f(up) - f(down)) / (2.0 * h);
}

// Linear-interpolation quantile on sorted data (Hyndman-Fan type 7).
inline double quantile7(std::vector<double> v, double prob) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct Fences {
  double lower;
  double upper;
};

inline Fences iqr_fences(const std::vector<double>& v, double multiplier = 3.0) {
  const double q1 = quantile7(v, 0.25);
  const double q3 = quantile7(v, 0.75);
  return {q1 - multiplier * (q3 - q1), q3 + multiplier * (q3 - q1)};
}

// Round half up to two decimals via exact rational comparison.
inline double two_decimals(long long num, long long den) {
  const long long scaled = (200 * num + den) / (2 * den);
  return static_cast<double>(scaled) / 100.0;
}

}  // namespace condage::testing

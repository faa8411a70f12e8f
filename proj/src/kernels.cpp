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

#include "condage/kernels.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace condage::kernels {

namespace {

inline void assign_one(std::size_t i, std::span<const EncodedPoint> points,
                       std::span<const EncodedPoint> centroids, const SpaceLayout& layout,
                       std::span<std::size_t> assignment, std::span<double> dist) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = distance_unchecked(points[i], centroids[c], layout);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  assignment[i] = best;
  dist[i] = best_d;
}

inline void silhouette_one(std::size_t r, std::span<const EncodedPoint> points,
                           std::span<const std::size_t> assignment,
                           std::span<const std::size_t> counts, const SpaceLayout& layout,
                           std::vector<double>& sums, std::span<double> a, std::span<double> b,
                           std::span<double> s) {
  std::fill(sums.begin(), sums.end(), 0.0);
  for (std::size_t t = 0; t < points.size(); ++t) {
    if (t == r) continue;
    sums[assignment[t]] += distance_unchecked(points[r], points[t], layout);
  }
  const std::size_t own = assignment[r];
  double b_r = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (c == own || counts[c] == 0) continue;
    b_r = std::min(b_r, sums[c] / static_cast<double>(counts[c]));
  }
  if (counts[own] <= 1) {
    a[r] = 0.0;
    b[r] = b_r;
    s[r] = 0.0;
    return;
  }
  const double a_r = sums[own] / static_cast<double>(counts[own] - 1);
  const double denom = std::max(a_r, b_r);
  a[r] = a_r;
  b[r] = b_r;
  // b_r stays infinite only when every other cluster is empty.
  s[r] = denom > 0.0 && denom < std::numeric_limits<double>::infinity() ? (b_r - a_r) / denom : 0.0;
}

std::vector<std::size_t> cluster_counts(std::span<const std::size_t> assignment, std::size_t k) {
  std::vector<std::size_t> counts(k, 0);
  for (const auto c : assignment) ++counts[c];
  return counts;
}

}  // namespace

void assign_nearest(std::span<const EncodedPoint> points,
                    std::span<const EncodedPoint> centroids, const SpaceLayout& layout,
                    std::span<std::size_t> assignment, std::span<double> dist) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    assign_one(static_cast<std::size_t>(i), points, centroids, layout, assignment, dist);
  }
}

void assign_nearest_serial(std::span<const EncodedPoint> points,
                           std::span<const EncodedPoint> centroids, const SpaceLayout& layout,
                           std::span<std::size_t> assignment, std::span<double> dist) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    assign_one(i, points, centroids, layout, assignment, dist);
  }
}

void silhouette_terms(std::span<const EncodedPoint> points,
                      std::span<const std::size_t> assignment, std::size_t k,
                      const SpaceLayout& layout, std::span<double> a, std::span<double> b,
                      std::span<double> s) {
  const auto counts = cluster_counts(assignment, k);
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel
  {
    std::vector<double> sums(k);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      silhouette_one(static_cast<std::size_t>(r), points, assignment, counts, layout, sums, a, b, s);
    }
  }
}

void silhouette_terms_serial(std::span<const EncodedPoint> points,
                             std::span<const std::size_t> assignment, std::size_t k,
                             const SpaceLayout& layout, std::span<double> a,
                             std::span<double> b, std::span<double> s) {
  const auto counts = cluster_counts(assignment, k);
  std::vector<double> sums(k);
  for (std::size_t r = 0; r < points.size(); ++r) {
    silhouette_one(r, points, assignment, counts, layout, sums, a, b, s);
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace condage::kernels

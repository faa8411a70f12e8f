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

// Data-parallel inner loops of the clustering module. Every kernel has an
// OpenMP version and a serial reference with identical per-point arithmetic,
// so both produce bit-identical output for any thread count.

#include <cstddef>
#include <span>

#include "condage/feature_space.hpp"

namespace condage::kernels {

/// Writes the nearest centroid of every point (ties go to the lowest index)
/// and the squared-form distance to it.
void assign_nearest(std::span<const EncodedPoint> points,
                    std::span<const EncodedPoint> centroids, const SpaceLayout& layout,
                    std::span<std::size_t> assignment, std::span<double> dist);

void assign_nearest_serial(std::span<const EncodedPoint> points,
                           std::span<const EncodedPoint> centroids, const SpaceLayout& layout,
                           std::span<std::size_t> assignment, std::span<double> dist);

/// Per-point silhouette terms a_r, b_r and s_r for a hard assignment into k
/// clusters. Singleton clusters and 0/0 cases give s_r = 0.
void silhouette_terms(std::span<const EncodedPoint> points,
                      std::span<const std::size_t> assignment, std::size_t k,
                      const SpaceLayout& layout, std::span<double> a, std::span<double> b,
                      std::span<double> s);

void silhouette_terms_serial(std::span<const EncodedPoint> points,
                             std::span<const std::size_t> assignment, std::size_t k,
                             const SpaceLayout& layout, std::span<double> a,
                             std::span<double> b, std::span<double> s);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace condage::kernels

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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "condage/asset_data.hpp"

namespace condage {

struct LabeledExample {
  double physical_age = 0.0;
  double conditional_age = 0.0;
  Status status = Status::Working;
};

/// Duplicates the minority class cyclically until both classes have the same
/// count; leftover copies are drawn without replacement using `seed`, and the
/// result is shuffled with `seed`. Throws SingleClass if a class is missing.
std::vector<LabeledExample> oversample(std::span<const LabeledExample> examples,
                                       std::uint64_t seed);

using Coefficients = std::array<double, 3>;

/// Affine map from ages in years to the standardized inputs the optimizer
/// works in: z = (age - mean) / scale.
struct Standardization {
  double physical_mean = 0.0;
  double physical_scale = 1.0;
  double conditional_mean = 0.0;
  double conditional_scale = 1.0;

  static Standardization fit(std::span<const LabeledExample> examples);
  static Standardization identity() { return {}; }
};

/// Mean binomial log-likelihood of the two-age logistic model with Failed as
/// the positive label, evaluated in the coordinates of `scaling`.
class LogisticObjective {
 public:
  LogisticObjective(std::span<const LabeledExample> examples, const Standardization& scaling);

  double value(const Coefficients& theta) const;
  Coefficients gradient(const Coefficients& theta) const;
  std::array<Coefficients, 3> hessian(const Coefficients& theta) const;

 private:
  struct Row {
    double x1;
    double x2;
    double y;
  };
  std::vector<Row> rows_;
};

struct LogisticConfig {
  int max_iters = 100;
  double tolerance = 1e-8;         // max-norm of the gradient
  double coefficient_cap = 50.0;   // standardized units
};

struct LogisticModel {
  // Raw-unit coefficients: L = 1 / (1 + exp(-(beta0 + beta1 A^P + beta2 A^C))).
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  Coefficients standardized{};  // coefficients in optimizer coordinates
  Standardization scaling;
  int iterations = 0;
  double log_likelihood = 0.0;  // mean per example
  std::vector<double> log_likelihood_history;
  bool separation_capped = false;
};

/// Newton-Raphson (IRLS) with step halving on the mean log-likelihood.
/// Throws SingleClass, InvalidArgument (< 3 examples) or NotConverged.
LogisticModel train_logistic(std::span<const LabeledExample> examples,
                             const LogisticConfig& config = {});

double predict_probability(const LogisticModel& model, double physical_age,
                           double conditional_age);

/// Failed iff the failure probability is strictly greater than `threshold`.
Status classify(const LogisticModel& model, double physical_age, double conditional_age,
                double threshold = 0.5);

}  // namespace condage

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

#include <cstddef>
#include <iosfwd>
#include <span>

#include "condage/asset_data.hpp"

namespace condage {

/// Two-parameter Weibull failure-age distribution F(t) = 1 - exp(-(t/alpha)^beta).
struct WeibullModel {
  double alpha = 1.0;  // scale, years
  double beta = 1.0;   // shape
  double log_likelihood = 0.0;
  std::size_t failures = 0;
  std::size_t censored = 0;
  int iterations = 0;
};

/// Throws NegativeAge for age < 0.
double weibull_cdf(const WeibullModel& m, double age);

struct WeibullConfig {
  int max_iters = 200;
  double tolerance = 1e-10;  // |delta beta|
  double beta_min = 0.05;
  double beta_max = 50.0;
};

/// Censored log-likelihood: Failed ages are exact failure times, Working
/// ages are right-censored.
double weibull_log_likelihood(double alpha, double beta, std::span<const double> ages,
                              std::span<const Status> statuses);

/// Maximum-likelihood fit with alpha profiled out in closed form and a
/// safeguarded Newton iteration on beta inside [beta_min, beta_max].
/// Throws InsufficientFailures (< 2 failures), InvalidArgument (age <= 0) or
/// NotConverged (no root in the bracket, e.g. zero-variance failure ages).
WeibullModel fit_weibull(std::span<const double> ages, std::span<const Status> statuses,
                         const WeibullConfig& config = {});

struct WeibullPrediction {
  double probability = 0.0;
  Status status = Status::Working;
};

/// Failure probability within `horizon` years of an asset aged `age`.
/// Conditional mode uses (F(a+T) - F(a)) / (1 - F(a)); unconditional mode
/// uses F(a+T). Failed iff probability > threshold.
WeibullPrediction predict_weibull(const WeibullModel& m, double age, double horizon,
                                  double threshold = 0.5, bool conditional = true);

/// CSV "Age,F" sampled on [0, max_age] in `steps` equal intervals.
void write_weibull_curve(std::ostream& out, const WeibullModel& m, double max_age,
                         std::size_t steps);

}  // namespace condage

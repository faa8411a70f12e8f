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

#include "condage/weibull_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "condage/error.hpp"
#include "condage/text.hpp"

namespace condage {

namespace {

double cumulative_hazard(const WeibullModel& m, double age) {
  return std::pow(age / m.alpha, m.beta);
}

// Sums over the scaled sample u = t / t_max needed by the profile score.
struct PowerSums {
  double s0 = 0.0;  // sum u^b
  double s1 = 0.0;  // sum u^b ln u
  double s2 = 0.0;  // sum u^b (ln u)^2
};

PowerSums power_sums(std::span<const double> log_u, double beta) {
  PowerSums p;
  for (const double lu : log_u) {
    const double w = std::exp(beta * lu);
    p.s0 += w;
    p.s1 += w * lu;
    p.s2 += w * lu * lu;
  }
  return p;
}

}  // namespace

double weibull_cdf(const WeibullModel& m, double age) {
  if (age < 0.0) throw Error(ErrorCode::NegativeAge, "age must be non-negative");
  return -std::expm1(-cumulative_hazard(m, age));
}

double weibull_log_likelihood(double alpha, double beta, std::span<const double> ages,
                              std::span<const Status> statuses) {
  double ll = 0.0;
  for (std::size_t i = 0; i < ages.size(); ++i) {
    const double z = ages[i] / alpha;
    if (statuses[i] == Status::Failed) {
      ll += std::log(beta) - std::log(alpha) + (beta - 1.0) * std::log(z);
    }
    ll -= std::pow(z, beta);
  }
  return ll;
}

WeibullModel fit_weibull(std::span<const double> ages, std::span<const Status> statuses,
                         const WeibullConfig& config) {
  if (ages.size() != statuses.size()) {
    throw Error(ErrorCode::InvalidArgument, "ages and statuses differ in length");
  }
  WeibullModel model;
  double t_max = 0.0;
  for (std::size_t i = 0; i < ages.size(); ++i) {
    if (!(ages[i] > 0.0) || !std::isfinite(ages[i])) {
      throw Error(ErrorCode::InvalidArgument, "Weibull fit needs positive ages");
    }
    t_max = std::max(t_max, ages[i]);
    (statuses[i] == Status::Failed ? model.failures : model.censored) += 1;
  }
  if (model.failures < 2) {
    throw Error(ErrorCode::InsufficientFailures,
                std::to_string(model.failures) + " failures, need at least 2");
  }

  std::vector<double> log_u(ages.size());
  double failed_log_sum = 0.0;
  for (std::size_t i = 0; i < ages.size(); ++i) {
    log_u[i] = std::log(ages[i] / t_max);
    if (statuses[i] == Status::Failed) failed_log_sum += log_u[i];
  }
  const double d = static_cast<double>(model.failures);
  const double mean_failed_log = failed_log_sum / d;

  // Profile score in beta; strictly decreasing.
  const auto score = [&](double beta, PowerSums& p) {
    p = power_sums(log_u, beta);
    return 1.0 / beta + mean_failed_log - p.s1 / p.s0;
  };

  PowerSums sums;
  double lo = config.beta_min;
  double hi = config.beta_max;
  if (score(hi, sums) > 0.0) {
    throw Error(ErrorCode::NotConverged, "shape parameter diverges beyond " + text::format_real(hi));
  }
  if (score(lo, sums) < 0.0) {
    throw Error(ErrorCode::NotConverged, "shape parameter below " + text::format_real(lo));
  }

  double beta = std::clamp(1.0, lo, hi);
  bool converged = false;
  int iter = 0;
  for (; iter < config.max_iters; ++iter) {
    const double g = score(beta, sums);
    if (g > 0.0) {
      lo = beta;
    } else {
      hi = beta;
    }
    const double variance = sums.s2 / sums.s0 - (sums.s1 / sums.s0) * (sums.s1 / sums.s0);
    const double slope = -1.0 / (beta * beta) - variance;
    double next = beta - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double delta = std::abs(next - beta);
    beta = next;
    if (delta < config.tolerance) {
      converged = true;
      ++iter;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NotConverged, "Weibull shape did not settle in " +
                                             std::to_string(config.max_iters) + " iterations");
  }
  sums = power_sums(log_u, beta);
  model.beta = beta;
  model.alpha = t_max * std::pow(sums.s0 / d, 1.0 / beta);
  model.iterations = iter;
  model.log_likelihood = weibull_log_likelihood(model.alpha, model.beta, ages, statuses);
  return model;
}

WeibullPrediction predict_weibull(const WeibullModel& m, double age, double horizon,
                                  double threshold, bool conditional) {
  if (age < 0.0 || horizon < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "age and horizon must be non-negative");
  }
  WeibullPrediction out;
  if (conditional) {
    out.probability = -std::expm1(cumulative_hazard(m, age) - cumulative_hazard(m, age + horizon));
  } else {
    out.probability = weibull_cdf(m, age + horizon);
  }
  out.probability = std::clamp(out.probability, 0.0, 1.0);
  out.status = out.probability > threshold ? Status::Failed : Status::Working;
  return out;
}

void write_weibull_curve(std::ostream& out, const WeibullModel& m, double max_age,
                         std::size_t steps) {
  out << "Age,F\n";
  for (std::size_t i = 0; i <= steps; ++i) {
    const double age = max_age * static_cast<double>(i) / static_cast<double>(steps);
    out << text::format_real(age) << ',' << text::format_real(weibull_cdf(m, age)) << '\n';
  }
}

}  // namespace condage

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

#include "condage/failure_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "condage/error.hpp"

namespace condage {

namespace {

double softplus(double s) { return std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s))); }

double sigmoid(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

void require_both_classes(std::span<const LabeledExample> examples) {
  const auto failed = std::count_if(examples.begin(), examples.end(),
                                    [](const LabeledExample& e) { return e.status == Status::Failed; });
  if (failed == 0 || failed == static_cast<std::ptrdiff_t>(examples.size())) {
    throw Error(ErrorCode::SingleClass, "training data holds only one status");
  }
}

// Solves A x = b for symmetric positive definite A, adding a growing ridge
// when A is numerically singular.
Coefficients solve_spd(std::array<Coefficients, 3> a, const Coefficients& b) {
  const double trace = a[0][0] + a[1][1] + a[2][2];
  double ridge = 0.0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::array<Coefficients, 3> l{};
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      for (int j = 0; j <= i; ++j) {
        double sum = a[i][j] + (i == j ? ridge : 0.0);
        for (int k = 0; k < j; ++k) sum -= l[i][k] * l[j][k];
        if (i == j) {
          if (!(sum > 1e-300)) {
            ok = false;
            break;
          }
          l[i][i] = std::sqrt(sum);
        } else {
          l[i][j] = sum / l[j][j];
        }
      }
    }
    if (ok) {
      Coefficients y{};
      for (int i = 0; i < 3; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= l[i][k] * y[k];
        y[i] = sum / l[i][i];
      }
      Coefficients x{};
      for (int i = 2; i >= 0; --i) {
        double sum = y[i];
        for (int k = i + 1; k < 3; ++k) sum -= l[k][i] * x[k];
        x[i] = sum / l[i][i];
      }
      return x;
    }
    ridge = ridge == 0.0 ? 1e-12 * std::max(trace, 1e-12) : ridge * 100.0;
  }
  return b;  // fall back to a gradient step
}

}  // namespace

std::vector<LabeledExample> oversample(std::span<const LabeledExample> examples,
                                       std::uint64_t seed) {
  std::vector<LabeledExample> failed;
  std::vector<LabeledExample> working;
  for (const auto& e : examples) (e.status == Status::Failed ? failed : working).push_back(e);
  if (failed.empty() || working.empty()) {
    throw Error(ErrorCode::SingleClass, "oversampling needs both statuses");
  }
  auto& minority = failed.size() <= working.size() ? failed : working;
  const auto& majority = failed.size() <= working.size() ? working : failed;
  std::mt19937_64 rng(seed);

  std::vector<LabeledExample> out(majority.begin(), majority.end());
  const std::size_t copies = majority.size() / minority.size();
  const std::size_t extra = majority.size() % minority.size();
  for (std::size_t c = 0; c < copies; ++c) out.insert(out.end(), minority.begin(), minority.end());
  std::vector<std::size_t> order(minority.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < extra; ++i) out.push_back(minority[order[i]]);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

Standardization Standardization::fit(std::span<const LabeledExample> examples) {
  Standardization s;
  const auto n = static_cast<double>(examples.size());
  if (examples.empty()) return s;
  for (const auto& e : examples) {
    s.physical_mean += e.physical_age;
    s.conditional_mean += e.conditional_age;
  }
  s.physical_mean /= n;
  s.conditional_mean /= n;
  double vp = 0.0;
  double vc = 0.0;
  for (const auto& e : examples) {
    vp += (e.physical_age - s.physical_mean) * (e.physical_age - s.physical_mean);
    vc += (e.conditional_age - s.conditional_mean) * (e.conditional_age - s.conditional_mean);
  }
  s.physical_scale = vp > 0.0 ? std::sqrt(vp / n) : 1.0;
  s.conditional_scale = vc > 0.0 ? std::sqrt(vc / n) : 1.0;
  return s;
}

LogisticObjective::LogisticObjective(std::span<const LabeledExample> examples,
                                     const Standardization& scaling) {
  rows_.reserve(examples.size());
  for (const auto& e : examples) {
    rows_.push_back({(e.physical_age - scaling.physical_mean) / scaling.physical_scale,
                     (e.conditional_age - scaling.conditional_mean) / scaling.conditional_scale,
                     e.status == Status::Failed ? 1.0 : 0.0});
  }
}

double LogisticObjective::value(const Coefficients& theta) const {
  double total = 0.0;
  for (const auto& r : rows_) {
    const double s = theta[0] + theta[1] * r.x1 + theta[2] * r.x2;
    total += r.y * s - softplus(s);
  }
  return total / static_cast<double>(rows_.size());
}

Coefficients LogisticObjective::gradient(const Coefficients& theta) const {
  Coefficients g{};
  for (const auto& r : rows_) {
    const double residual = r.y - sigmoid(theta[0] + theta[1] * r.x1 + theta[2] * r.x2);
    g[0] += residual;
    g[1] += residual * r.x1;
    g[2] += residual * r.x2;
  }
  for (auto& v : g) v /= static_cast<double>(rows_.size());
  return g;
}

std::array<Coefficients, 3> LogisticObjective::hessian(const Coefficients& theta) const {
  std::array<Coefficients, 3> h{};
  for (const auto& r : rows_) {
    const double p = sigmoid(theta[0] + theta[1] * r.x1 + theta[2] * r.x2);
    const double w = p * (1.0 - p);
    const Coefficients x{1.0, r.x1, r.x2};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) h[i][j] -= w * x[i] * x[j];
    }
  }
  for (auto& row : h) {
    for (auto& v : row) v /= static_cast<double>(rows_.size());
  }
  return h;
}

LogisticModel train_logistic(std::span<const LabeledExample> examples,
                             const LogisticConfig& config) {
  if (examples.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 examples");
  require_both_classes(examples);

  LogisticModel model;
  model.scaling = Standardization::fit(examples);
  const LogisticObjective objective(examples, model.scaling);

  Coefficients theta{};
  double ll = objective.value(theta);
  model.log_likelihood_history.push_back(ll);
  bool converged = false;
  int iter = 0;
  for (; iter < config.max_iters; ++iter) {
    const auto g = objective.gradient(theta);
    const double gmax = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
    if (gmax < config.tolerance) {
      converged = true;
      break;
    }
    auto neg_h = objective.hessian(theta);
    for (auto& row : neg_h) {
      for (auto& v : row) v = -v;
    }
    const auto step = solve_spd(neg_h, g);

    double t = 1.0;
    Coefficients candidate{};
    double candidate_ll = ll;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      for (int k = 0; k < 3; ++k) candidate[k] = theta[k] + t * step[k];
      candidate_ll = objective.value(candidate);
      if (candidate_ll >= ll) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No ascent left at double precision; the gradient test decides.
      converged = gmax < std::sqrt(config.tolerance);
      break;
    }

    const double largest = std::max({std::abs(candidate[0]), std::abs(candidate[1]), std::abs(candidate[2])});
    if (largest > config.coefficient_cap) {
      // Shrink along the accepted direction until the cap; concavity keeps
      // the objective above the previous iterate.
      double lo = 0.0;
      double hi = 1.0;
      for (int b = 0; b < 60; ++b) {
        const double mid = 0.5 * (lo + hi);
        double m = 0.0;
        for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(theta[k] + mid * t * step[k]));
        (m > config.coefficient_cap ? hi : lo) = mid;
      }
      for (int k = 0; k < 3; ++k) theta[k] += lo * t * step[k];
      ll = objective.value(theta);
      model.log_likelihood_history.push_back(ll);
      model.separation_capped = true;
      converged = true;
      ++iter;
      break;
    }
    theta = candidate;
    ll = candidate_ll;
    model.log_likelihood_history.push_back(ll);
  }
  if (!converged) {
    throw Error(ErrorCode::NotConverged,
                "logistic training stopped after " + std::to_string(iter) + " iterations");
  }

  model.iterations = iter;
  model.log_likelihood = ll;
  model.standardized = theta;
  const auto& s = model.scaling;
  model.beta1 = theta[1] / s.physical_scale;
  model.beta2 = theta[2] / s.conditional_scale;
  model.beta0 = theta[0] - model.beta1 * s.physical_mean - model.beta2 * s.conditional_mean;
  return model;
}

double predict_probability(const LogisticModel& model, double physical_age,
                           double conditional_age) {
  return sigmoid(model.beta0 + model.beta1 * physical_age + model.beta2 * conditional_age);
}

Status classify(const LogisticModel& model, double physical_age, double conditional_age,
                double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1)");
  }
  return predict_probability(model, physical_age, conditional_age) > threshold ? Status::Failed
                                                                                : Status::Working;
}

}  // namespace condage

// Copyright 2026 The simrefine Authors. All Rights Reserved.
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
// =============================================================================

#include "simrefine/gpopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "simrefine/error.hpp"
#include "simrefine/random.hpp"

namespace simrefine {

namespace {

const double kSqrt5 = std::sqrt(5.0);

double NormalPdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

std::vector<int> Primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double ScrambledRadicalInverse(std::uint64_t index, int base, const std::vector<int>& perm) {
  double inv_base = 1.0 / base;
  double factor = inv_base;
  double value = 0.0;
  while (index > 0) {
    value += perm[index % base] * factor;
    index /= base;
    factor *= inv_base;
  }
  return value;
}

struct Scored {
  double ei;
  int index;
};

}  // namespace

void GPConfig::Validate() const {
  if (!(signal_variance > 0.0)) throw ConfigError("GP signal variance must be > 0");
  if (!(lengthscale > 0.0)) throw ConfigError("GP lengthscale must be > 0");
  if (!(noise >= 1e-8)) throw ConfigError("GP noise jitter must be >= 1e-8");
}

void EvaluationHistory::Add(const Eigen::VectorXd& point, double value, bool was_penalized,
                            double seconds) {
  if (dim == 0) dim = static_cast<int>(point.size());
  if (point.size() != dim) {
    throw ShapeError("history point has dimension " + std::to_string(point.size()) +
                     ", expected " + std::to_string(dim));
  }
  points.push_back(point);
  values.push_back(value);
  penalized.push_back(was_penalized ? 1 : 0);
  wall_time.push_back(seconds);
}

void EvaluationHistory::Validate() const {
  if (values.size() != points.size() || penalized.size() != points.size() ||
      wall_time.size() != points.size()) {
    throw ShapeError("evaluation history columns differ in length");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw ShapeError("history point of wrong dimension");
    if (points[i].minCoeff() < -1.0 || points[i].maxCoeff() > 1.0) {
      throw DomainError("history point " + std::to_string(i) + " outside [-1, 1]");
    }
    if (!std::isfinite(values[i])) {
      throw DomainError("history value " + std::to_string(i) + " is not finite");
    }
  }
}

std::size_t EvaluationHistory::BestIndex() const {
  if (values.empty()) throw DomainError("empty history has no best entry");
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) -
                                  values.begin());
}

EvaluationHistory EvaluationHistory::Prefix(std::size_t count) const {
  EvaluationHistory out(dim);
  count = std::min(count, size());
  out.points.assign(points.begin(), points.begin() + count);
  out.values.assign(values.begin(), values.begin() + count);
  out.penalized.assign(penalized.begin(), penalized.begin() + count);
  out.wall_time.assign(wall_time.begin(), wall_time.begin() + count);
  return out;
}

double Matern52(double r, const GPConfig& cfg) {
  const double s = kSqrt5 * r / cfg.lengthscale;
  return cfg.signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double Matern52(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const GPConfig& cfg) {
  if (a.size() != b.size()) {
    throw ShapeError("kernel arguments differ in dimension: " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  }
  return Matern52((a - b).norm(), cfg);
}

GaussianProcess::GaussianProcess(const EvaluationHistory& hist, const GPConfig& cfg)
    : cfg_(cfg) {
  cfg_.Validate();
  const int n = static_cast<int>(hist.size());
  if (n < 1) throw DomainError("GP posterior needs at least one observation");
  x_.resize(hist.dim, n);
  y_.resize(n);
  for (int i = 0; i < n; ++i) {
    x_.col(i) = hist.points[i];
    y_[i] = hist.values[i];
  }
  if (cfg_.normalize_outputs) {
    y_mean_ = y_.mean();
    const double var = n > 1 ? (y_.array() - y_mean_).square().sum() / n : 0.0;
    y_scale_ = var > 1e-24 ? std::sqrt(var) : 1.0;
    y_ = (y_.array() - y_mean_) / y_scale_;
  }
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    gram(i, i) = cfg_.signal_variance + cfg_.noise;
    for (int j = 0; j < i; ++j) {
      gram(i, j) = gram(j, i) = Matern52((x_.col(i) - x_.col(j)).norm(), cfg_);
    }
  }
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success) {
    throw NumericalError("Gram matrix is not positive definite; increase the noise jitter");
  }
  alpha_ = llt_.solve(y_);
}

Posterior GaussianProcess::Predict(const Eigen::VectorXd& x) const {
  if (x.size() != x_.rows()) throw ShapeError("query has the wrong dimension");
  const int n = static_cast<int>(x_.cols());
  Eigen::VectorXd k(n);
  for (int i = 0; i < n; ++i) k[i] = Matern52((x_.col(i) - x).norm(), cfg_);
  const Eigen::VectorXd v = llt_.matrixL().solve(k);
  Posterior post;
  post.mean = y_mean_ + y_scale_ * k.dot(alpha_);
  post.variance = std::max(0.0, cfg_.signal_variance - v.squaredNorm()) * y_scale_ * y_scale_;
  return post;
}

double GaussianProcess::LogMarginalLikelihood() const {
  const auto& l = llt_.matrixL();
  double log_det = 0.0;
  for (int i = 0; i < y_.size(); ++i) log_det += std::log(l(i, i));
  return -0.5 * y_.dot(alpha_) - log_det -
         0.5 * static_cast<double>(y_.size()) * std::log(2.0 * std::numbers::pi);
}

Posterior GpPosterior(const EvaluationHistory& hist, const Eigen::VectorXd& query,
                      const GPConfig& cfg) {
  return GaussianProcess(hist, cfg).Predict(query);
}

double ExpectedImprovement(const Posterior& post, double best) {
  const double sigma = std::sqrt(post.variance);
  const double gain = best - post.mean;
  if (!(sigma > 1e-300)) return std::max(0.0, gain);
  const double z = gain / sigma;
  return std::max(0.0, gain * NormalCdf(z) + sigma * NormalPdf(z));
}

double ExpectedImprovement(const EvaluationHistory& hist, const Eigen::VectorXd& query,
                           const GPConfig& cfg) {
  const double best = hist.values[hist.BestIndex()];
  return ExpectedImprovement(GpPosterior(hist, query, cfg), best);
}

GPConfig FitHyperparameters(const EvaluationHistory& hist, const GPConfig& cfg) {
  if (hist.size() < 3) throw DomainError("hyperparameter fit needs at least 3 observations");
  const auto [lo, hi] = std::minmax_element(hist.values.begin(), hist.values.end());
  if (*lo == *hi) return cfg;

  GPConfig best = cfg;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double ell : kLengthscaleGrid) {
    for (double sf2 : kSignalVarianceGrid) {
      GPConfig trial = cfg;
      trial.lengthscale = ell;
      trial.signal_variance = sf2;
      trial.normalize_outputs = true;
      try {
        const double ll = GaussianProcess(hist, trial).LogMarginalLikelihood();
        if (ll > best_ll) {
          best_ll = ll;
          best.lengthscale = ell;
          best.signal_variance = sf2;
        }
      } catch (const NumericalError&) {
        // skip grid points whose Gram matrix does not factor
      }
    }
  }
  return best;
}

std::vector<Eigen::VectorXd> InitialDesign(int dim, int count, std::uint64_t seed) {
  if (dim < 1) throw DomainError("initial design needs dim >= 1");
  std::vector<Eigen::VectorXd> design;
  if (count <= 0) return design;
  design.push_back(Eigen::VectorXd::Zero(dim));

  const auto primes = Primes(dim);
  Rng rng(seed);
  std::vector<std::vector<int>> perms(dim);
  for (int d = 0; d < dim; ++d) {
    auto& perm = perms[d];
    perm.resize(primes[d]);
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates over digits 1..b-1; 0 stays fixed.
    for (int i = primes[d] - 1; i > 1; --i) {
      const int j = 1 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(i)));
      std::swap(perm[i], perm[j]);
    }
  }
  for (int i = 1; i < count; ++i) {
    Eigen::VectorXd p(dim);
    for (int d = 0; d < dim; ++d) {
      p[d] = 2.0 * ScrambledRadicalInverse(static_cast<std::uint64_t>(i), primes[d], perms[d]) -
             1.0;
    }
    design.push_back(p);
  }
  return design;
}

Eigen::VectorXd SuggestNext(const EvaluationHistory& hist, const GPConfig& cfg,
                            std::uint64_t seed, const SuggestOptions& options) {
  if (hist.dim < 1) throw DomainError("history dimension is not set");
  hist.Validate();
  const std::size_t n = hist.size();
  const int dim = hist.dim;
  if (n < static_cast<std::size_t>(options.initial_design)) {
    const auto design =
        InitialDesign(dim, options.initial_design, DeriveSeed(seed, Stream::kInitialDesign));
    return design[n];
  }

  GPConfig model_cfg = cfg;
  if (n >= 3) {
    const std::size_t every = static_cast<std::size_t>(std::max(options.refit_every, 1));
    const std::size_t fit_n = std::max<std::size_t>(3, n - n % every);
    model_cfg = FitHyperparameters(hist.Prefix(fit_n), cfg);
  }
  const GaussianProcess gp(hist, model_cfg);
  const double best = hist.values[hist.BestIndex()];
  auto ei = [&](const Eigen::VectorXd& x) { return ExpectedImprovement(gp.Predict(x), best); };

  Rng rng(DeriveSeed(seed, Stream::kOptimizer, n));
  std::vector<Eigen::VectorXd> candidates(options.candidates);
  std::vector<Scored> scored(options.candidates);
  for (int c = 0; c < options.candidates; ++c) {
    candidates[c].resize(dim);
    for (int d = 0; d < dim; ++d) candidates[c][d] = rng.Uniform(-1.0, 1.0);
    scored[c] = {ei(candidates[c]), c};
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.ei > b.ei; });

  Eigen::VectorXd best_x = candidates[scored.front().index];
  double best_ei = scored.front().ei;
  const int starts = std::min(options.local_starts, options.candidates);
  constexpr double kSteps[] = {0.25, 0.1, 0.04, 0.016};
  constexpr int kMaxSweeps = 3;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd x = candidates[scored[s].index];
    double fx = scored[s].ei;
    for (double step : kSteps) {
      for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool improved = false;
        for (int d = 0; d < dim; ++d) {
          for (double dir : {1.0, -1.0}) {
            Eigen::VectorXd y = x;
            y[d] = std::clamp(x[d] + dir * step, -1.0, 1.0);
            if (y[d] == x[d]) continue;
            const double fy = ei(y);
            if (fy > fx) {
              x = std::move(y);
              fx = fy;
              improved = true;
            }
          }
        }
        if (!improved) break;
      }
    }
    if (fx > best_ei) {
      best_ei = fx;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace simrefine

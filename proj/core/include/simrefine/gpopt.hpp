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

#ifndef SIMREFINE_GPOPT_HPP
#define SIMREFINE_GPOPT_HPP

#include <Eigen/Core>
#include <Eigen/Cholesky>

#include <cstdint>
#include <vector>

namespace simrefine {

struct GPConfig {
  double signal_variance = 1.0;  // sigma_f^2
  double lengthscale = 0.8;      // isotropic
  double noise = 1e-6;           // jitter sigma_n^2, >= 1e-8
  bool normalize_outputs = true;

  void Validate() const;
};

// Observations in the box [-1, 1]^dim, in evaluation order.
struct EvaluationHistory {
  int dim = 0;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;
  std::vector<char> penalized;    // value replaced after a failed evaluation
  std::vector<double> wall_time;  // seconds spent in the evaluation

  explicit EvaluationHistory(int dimension = 0) : dim(dimension) {}

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void Add(const Eigen::VectorXd& point, double value, bool was_penalized = false,
           double seconds = 0.0);
  // Throws unless lengths agree, points are in the box and values finite.
  void Validate() const;
  std::size_t BestIndex() const;
  EvaluationHistory Prefix(std::size_t count) const;
};

// sigma_f^2 (1 + sqrt5 r / l + 5 r^2 / (3 l^2)) exp(-sqrt5 r / l).
double Matern52(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const GPConfig& cfg);
double Matern52(double r, const GPConfig& cfg);

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;  // latent function variance, >= 0
};

// Exact GP regression with a Cholesky-factored Gram matrix.
class GaussianProcess {
 public:
  GaussianProcess(const EvaluationHistory& hist, const GPConfig& cfg);

  Posterior Predict(const Eigen::VectorXd& x) const;
  // Of the (standardized, when enabled) training targets.
  double LogMarginalLikelihood() const;

  double output_mean() const { return y_mean_; }
  double output_scale() const { return y_scale_; }

 private:
  GPConfig cfg_;
  Eigen::MatrixXd x_;  // one training point per column
  Eigen::VectorXd y_;  // standardized targets
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
};

Posterior GpPosterior(const EvaluationHistory& hist, const Eigen::VectorXd& query,
                      const GPConfig& cfg);

// Minimization form; sigma -> 0 handled by its limit.
double ExpectedImprovement(const Posterior& post, double best);
double ExpectedImprovement(const EvaluationHistory& hist, const Eigen::VectorXd& query,
                           const GPConfig& cfg);

// Grid maximum-likelihood estimate of lengthscale and signal variance over
// standardized outputs; jitter is kept. All-equal values return `cfg`.
GPConfig FitHyperparameters(const EvaluationHistory& hist, const GPConfig& cfg);

inline constexpr double kLengthscaleGrid[] = {0.1, 0.2, 0.4, 0.8, 1.6, 3.2};
inline constexpr double kSignalVarianceGrid[] = {0.25, 1.0, 4.0};

struct SuggestOptions {
  int initial_design = 5;  // center point + scrambled Halton points
  int candidates = 2048;
  int local_starts = 8;
  int refit_every = 5;
};

// Center point followed by digit-scrambled Halton points, all in [-1, 1]^dim.
std::vector<Eigen::VectorXd> InitialDesign(int dim, int count, std::uint64_t seed);

// Next point to evaluate: the initial design while the history is shorter than
// it, then the expected-improvement maximizer. Deterministic in (hist, seed).
Eigen::VectorXd SuggestNext(const EvaluationHistory& hist, const GPConfig& cfg,
                            std::uint64_t seed, const SuggestOptions& options = {});

}  // namespace simrefine

#endif  // SIMREFINE_GPOPT_HPP

//
// Copyright 2026 The Adax Authors
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
//

#include "adax/mechanisms.hpp"

#include <cmath>

#include "adax/errors.hpp"

namespace adax {

void NoiseMechConfig::validate() const {
  if (n < 1) throw ParameterError("noise mechanism needs n >= 1");
  switch (kind) {
    case NoiseKind::kGaussian:
      if (!(rho > 0.0)) throw ParameterError("gaussian mechanism needs rho > 0");
      break;
    case NoiseKind::kLaplace:
      if (!(eps_prime > 0.0)) throw ParameterError("laplace mechanism needs eps' > 0");
      break;
    case NoiseKind::kEmpirical:
      break;
  }
}

double NoiseMechConfig::noise_scale() const {
  switch (kind) {
    case NoiseKind::kGaussian:
      return 1.0 / (static_cast<double>(n) * std::sqrt(2.0 * rho));
    case NoiseKind::kLaplace:
      return 1.0 / (static_cast<double>(n) * eps_prime);
    case NoiseKind::kEmpirical:
      return 0.0;
  }
  return 0.0;
}

double noise_answer(const NoiseMechConfig& cfg, const QuerySpec& q,
                    const SampleMatrix& x, Rng& rng) {
  cfg.validate();
  const double empirical = eval_query(q, x);
  switch (cfg.kind) {
    case NoiseKind::kGaussian:
      return empirical + rng.normal(0.0, cfg.noise_scale());
    case NoiseKind::kLaplace:
      return empirical + rng.laplace(cfg.noise_scale());
    case NoiseKind::kEmpirical:
      return empirical;
  }
  return empirical;
}

Thresholdout::Thresholdout(const SampleMatrix& x, const Params& params, Rng& rng)
    : params_(params),
      train_(SampleMatrix(1, 2)),
      holdout_(SampleMatrix(1, 2)),
      t_hat_(0.0) {
  if (params_.train_size < 1 || params_.train_size >= x.rows()) {
    throw ParameterError("thresholdout train size must be in [1, n-1]");
  }
  if (params_.sigma < 0.0) throw ParameterError("thresholdout sigma must be >= 0");
  auto parts = random_split(x, params_.train_size, rng);
  train_ = std::move(parts.first);
  holdout_ = std::move(parts.second);
  t_hat_ = params_.threshold + rng.laplace(2.0 * params_.sigma);
}

std::optional<double> Thresholdout::answer(const QuerySpec& q, Rng& rng) {
  if (halted_) throw MechanismHaltedError("thresholdout already emitted bottom");
  const double a_t = eval_query(q, train_);
  const double a_h = eval_query(q, holdout_);
  if (std::fabs(a_h - a_t) > t_hat_ + rng.laplace(4.0 * params_.sigma)) {
    if (used_ == params_.budget && params_.policy == BudgetPolicy::kHalt) {
      halted_ = true;
      return std::nullopt;
    }
    ++used_;
    t_hat_ = params_.threshold + rng.laplace(2.0 * params_.sigma);
    return a_h + rng.laplace(params_.sigma);
  }
  return a_t;
}

double sample_split_answer(const SampleMatrix& x, const QuerySpec& q, std::size_t i,
                           std::size_t k_max) {
  if (k_max < 1 || x.rows() < k_max) {
    throw ParameterError("sample splitting needs 1 <= k_max <= n");
  }
  if (i < 1 || i > k_max) {
    throw BudgetExhaustedError("sample-splitting block index past k_max");
  }
  const std::size_t block = x.rows() / k_max;
  return eval_query(q, x, (i - 1) * block, i * block);
}

}  // namespace adax

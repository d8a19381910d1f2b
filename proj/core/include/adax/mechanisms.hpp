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

#ifndef ADAX_MECHANISMS_HPP_
#define ADAX_MECHANISMS_HPP_

#include <cstddef>
#include <optional>

#include "adax/dataset.hpp"
#include "adax/query.hpp"
#include "adax/rng.hpp"

namespace adax {

enum class NoiseKind { kGaussian, kLaplace, kEmpirical };

// Parameters for the noise-adding baselines. The Gaussian answers
// phi(X) + N(0, 1/(2 n^2 rho)); the Laplace adds Lap(1/(n eps')); the
// empirical kind adds nothing.
struct NoiseMechConfig {
  NoiseKind kind = NoiseKind::kEmpirical;
  double rho = 0.0;        // Gaussian only, > 0
  double eps_prime = 0.0;  // Laplace only, > 0
  std::size_t n = 0;

  void validate() const;
  // Noise standard deviation (Gaussian) or scale (Laplace); 0 for empirical.
  double noise_scale() const;
};

// Empirical mean plus one draw of the configured noise. Deliberately not
// clipped to [0,1]: the width analyses are for the unclipped mechanism.
double noise_answer(const NoiseMechConfig& cfg, const QuerySpec& q,
                    const SampleMatrix& x, Rng& rng);

// What happens when the holdout budget B is used up: stop answering, or keep
// going for empirical-only runs (the over-budget uses are flagged).
enum class BudgetPolicy { kHalt, kContinueFlagged };

// Holdout mechanism: answers from the training split unless a noisy
// train/holdout discrepancy check trips, in which case the (noisy) holdout
// answer is released and one unit of budget is consumed.
class Thresholdout {
 public:
  struct Params {
    std::size_t train_size = 0;  // t; holdout gets n - t
    double threshold = 0.0;      // T
    double sigma = 0.0;          // noise scale, >= 0
    std::size_t budget = 0;      // B, max holdout uses
    BudgetPolicy policy = BudgetPolicy::kHalt;
  };

  // Randomly partitions x into train/holdout using rng, and draws the
  // initial noisy threshold T_hat = T + Lap(2 sigma).
  Thresholdout(const SampleMatrix& x, const Params& params, Rng& rng);

  // One round of the mechanism. Empty optional is the bottom symbol (budget
  // would be exceeded under the halting policy). Throws MechanismHaltedError
  // once halted.
  std::optional<double> answer(const QuerySpec& q, Rng& rng);

  std::size_t holdout_uses() const { return used_; }
  bool over_budget() const { return used_ > params_.budget; }
  bool halted() const { return halted_; }
  const SampleMatrix& train() const { return train_; }
  const SampleMatrix& holdout() const { return holdout_; }

 private:
  Params params_;
  SampleMatrix train_;
  SampleMatrix holdout_;
  double t_hat_;
  std::size_t used_ = 0;
  bool halted_ = false;
};

// Fresh-block baseline: the empirical mean of q on the i-th of k_max equal
// blocks (i is 1-based). Throws BudgetExhaustedError for i > k_max.
double sample_split_answer(const SampleMatrix& x, const QuerySpec& q, std::size_t i,
                           std::size_t k_max);

}  // namespace adax

#endif  // ADAX_MECHANISMS_HPP_

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

#ifndef ADAX_GNC_HPP_
#define ADAX_GNC_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "adax/dataset.hpp"
#include "adax/query.hpp"
#include "adax/rng.hpp"
#include "adax/transcript.hpp"

namespace adax {

enum class HoldoutTolKind { kChernoff, kMgf };

// Hoeffding tolerance for the holdout answer: sqrt(ln(2/beta_i) / (2 n_h)).
double holdout_tol_chernoff(double beta_i, std::size_t n_h);

// ln of the binomial-MGF tail bound on P(mean of n_h draws >= mu + tau'),
// ((1 + mu(e^l - 1)) / e^{l(mu + tau')})^n_h, evaluated at the stationary
// point l of the exponent (inner bisection on (0, 50]). Any l > 0 is a valid
// Chernoff exponent, so capping at 50 only loosens the bound.
double mgf_tail_log_bound(double mu, double tau_prime, std::size_t n_h);

// Variance-adaptive tolerance from the binomial MGF: the smallest
// tau' in (0, tau) with mgf_tail_log_bound(mu, tau', n_h) <= ln(beta_i/2),
// where mu = a_g - tau on the upper branch (a_g > a_h) and
// mu = 1 - a_g - tau otherwise. Empty when no tau' < tau satisfies the
// bound. Degenerate means (mu <= 0, target mean >= 1) make the requirement
// vacuous and return the smallest search point.
std::optional<double> holdout_tol_mgf(double beta_i, double a_g, double tau, double a_h,
                                      std::size_t n_h);

// Largest discretization gamma in [0, tau_i) with
// 2 exp(-2 (tau_i - gamma)^2 n_h) <= beta_i, in closed form; 0 signals that
// the mechanism must emit bottom.
double gamma_discretization(double tau_i, double beta_i, std::size_t n_h);

// ln(nu) where nu = C(i-1, f) * prod_j 1/gamma_j counts the distinguishable
// transcripts (nu = 1 when f = 0). Log-space: nu overflows quickly once
// failures accumulate with small gammas.
double transcript_count_log(std::size_t i, std::size_t f, std::span<const double> gammas);

// Per-query budget beta_i = beta * c_{i-1} * c_f / nu with
// c_j = 6 / (pi^2 (j+1)^2), computed in log space.
double beta_budget(std::size_t i, std::size_t f, std::span<const double> gammas,
                   double beta);

// A guessed (point, width) pair supplied to the check.
struct GuessResponse {
  double point = 0.0;
  double width = 0.0;
};

// Guess-and-Check over a random guess/holdout split of the dataset. Single
// owner per interaction; distinct interactions run concurrently on their own
// instances.
class GnCState {
 public:
  GnCState(const SampleMatrix& x, std::size_t guess_size, double beta,
           HoldoutTolKind tol, Rng& split_rng);

  // One protocol round; throws MechanismHaltedError once bottom was emitted.
  IntervalAnswer step(const QuerySpec& q, const GuessResponse& guess);

  const SampleMatrix& guess_set() const { return guess_set_; }
  const SampleMatrix& holdout() const { return holdout_; }
  std::size_t next_index() const { return i_; }
  std::size_t failures() const { return f_; }
  const std::vector<double>& gammas() const { return gammas_; }
  bool halted() const { return halted_; }
  double beta() const { return beta_; }
  // Budget used for the most recent step (recorded into transcripts).
  double last_beta_i() const { return last_beta_i_; }

 private:
  SampleMatrix guess_set_;
  SampleMatrix holdout_;
  double beta_;
  HoldoutTolKind tol_;
  std::size_t i_ = 1;
  std::size_t f_ = 0;
  std::vector<double> gammas_;
  bool halted_ = false;
  double last_beta_i_ = 0.0;
};

inline IntervalAnswer gnc_step(GnCState& st, const QuerySpec& q,
                               const GuessResponse& guess) {
  return st.step(q, guess);
}

// y rounded down to a multiple of gamma.
inline double floor_to_multiple(double y, double gamma) {
  return std::floor(y / gamma) * gamma;
}

}  // namespace adax

#endif  // ADAX_GNC_HPP_

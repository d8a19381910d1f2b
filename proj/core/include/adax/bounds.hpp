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

#ifndef ADAX_BOUNDS_HPP_
#define ADAX_BOUNDS_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace adax {

// Scalars entering the worst-case width formulas. Optional fields left empty
// are either unused by the bound at hand or optimized over by the solver.
struct BoundParams {
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.0;
  std::optional<double> rho;
  std::optional<double> eps_prime;
  std::optional<double> delta;
  std::optional<double> sigma;       // Thresholdout noise scale
  std::optional<double> threshold;   // Thresholdout T
  std::optional<std::size_t> holdout;   // Thresholdout h
  std::optional<std::size_t> budget_b;  // Thresholdout B

  void validate() const;
};

// A solved width together with the free parameters the solver chose.
struct WidthResult {
  double tau = 0.0;
  std::map<std::string, double> optimizer;

  bool vacuous() const { return !std::isfinite(tau); }
};

enum class BoundMech { kLaplace, kGaussian };

// min over lambda in (0,1) of (B - ln(1 - lambda)) / lambda. Callers pass B
// already doubled where the formula in use says 2B.
struct LambdaMin {
  double value;
  double lambda_star;
};
LambdaMin min_lambda_objective(double b);

// tau = sqrt(min_lambda(2 rho k n) / (2 n beta)) + (1/2n) sqrt(ln(4k/beta)/rho),
// minimizing over rho when the parameter is absent.
WidthResult gaussian_width_rzcw(const BoundParams& p);

// Simultaneous tail widths for k i.i.d. noise draws.
double gaussian_tail_width(double sigma, std::size_t k, double beta);
double laplace_tail_width(double scale, std::size_t k, double beta);

// eps under k-fold adaptive composition of eps'-DP mechanisms.
double advanced_composition(double eps_prime, std::size_t k, double delta);

// (rho-zCDP) -> eps at the given delta.
double zcdp_to_dp(double rho, double delta);

// Feasibility programs for the transfer-theorem widths. Infeasible programs
// return an infinite (vacuous) width rather than throwing: the comparison
// figures plot exactly those regimes.
WidthResult dfhprr_width(BoundMech mech, const BoundParams& p);

// Extended-monitor widths; 2-D refining log-grid over (eps', delta) or
// (rho, delta).
WidthResult bnsssu_width(BoundMech mech, const BoundParams& p);

// High-probability comparison width; optimizes rho when absent.
WidthResult xr17_width(const BoundParams& p);

// Mean and second moment of the max of m i.i.d. Laplace(scale) draws, by
// deterministic quadrature (reproducible bit-for-bit across runs).
struct MaxMoments {
  double mean;
  double second_moment;
};
MaxMoments laplace_max_moments(double scale, std::size_t m);

// Worst-case Thresholdout width / RMSE; requires sigma, threshold, holdout
// and budget_b.
WidthResult thresholdout_width(const BoundParams& p);
double thresholdout_rmse_bound(const BoundParams& p);

// RMSE bound for the Gaussian mechanism; optimizes rho when absent.
double gaussian_rmse_bound(const BoundParams& p);
// Same minimization, also reporting the minimizing rho (the harness runs the
// mechanism at the bound-optimal noise level).
struct RmseOpt {
  double rmse;
  double rho;
};
RmseOpt gaussian_rmse_bound_opt(const BoundParams& p);
// E[max_{i<=k} Z_i^2] for Z_i ~ N(0, sigma^2), by quadrature.
double expected_max_gaussian_sq(double sigma, std::size_t k);

// Fresh-data baseline: sqrt(k ln(2k/beta) / (2n)).
double sample_split_width(const BoundParams& p);

// Full-data answers rounded to multiples of gamma, budget split over the
// answer grid; optimizes gamma over a log grid when the argument is absent.
WidthResult discretization_width(const BoundParams& p,
                                 std::optional<double> gamma = std::nullopt);

}  // namespace adax

#endif  // ADAX_BOUNDS_HPP_

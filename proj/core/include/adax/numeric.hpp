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

#ifndef ADAX_NUMERIC_HPP_
#define ADAX_NUMERIC_HPP_

#include <cmath>
#include <functional>
#include <utility>

namespace adax {

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Minimizes a scalar function on [lo, hi]: a coarse scan brackets the best
// grid cell, golden-section polishes it. Assumes the function is unimodal at
// the scan resolution (its callers' objectives are; the grid oracles in the
// tests guard against missed basins).
struct ScalarMin {
  double x;
  double value;
};
ScalarMin minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          int scan_points = 256, double tol = 1e-10);

// Root of a monotone function on [lo, hi] by bisection. Endpoints must
// bracket the root; returns the midpoint of the final bracket.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-12, int max_iter = 200);

// Adaptive Simpson quadrature to the given absolute tolerance.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-10);

// Two-dimensional refining log-grid search: `rounds` passes of an
// npts x npts grid, re-centering on the incumbent each time. Inputs are the
// (positive) parameter ranges; the function is evaluated at exp of the grid.
struct GridMin2d {
  double x;
  double y;
  double value;
};
GridMin2d minimize_log_grid_2d(const std::function<double(double, double)>& f,
                               double x_lo, double x_hi, double y_lo, double y_hi,
                               int npts = 64, int rounds = 3);

}  // namespace adax

#endif  // ADAX_NUMERIC_HPP_

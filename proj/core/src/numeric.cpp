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

#include "adax/numeric.hpp"

#include <limits>
#include <vector>

#include "adax/errors.hpp"

namespace adax {

ScalarMin minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          int scan_points, double tol) {
  if (!(hi > lo)) throw ParameterError("minimize_scalar: empty interval");
  // Bracket by scanning.
  double best_x = lo;
  double best_v = std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / (scan_points - 1);
  int best_i = 0;
  for (int i = 0; i < scan_points; ++i) {
    const double x = lo + step * i;
    const double v = f(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
      best_i = i;
    }
  }
  double a = lo + step * (best_i > 0 ? best_i - 1 : 0);
  double b = lo + step * (best_i < scan_points - 1 ? best_i + 1 : scan_points - 1);
  // Golden section on [a, b].
  const double inv_phi = 0.6180339887498948482;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double vm = f(xm);
  if (vm < best_v) return {xm, vm};
  return {best_x, best_v};
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw ParameterError("bisect_root: endpoints do not bracket a root");
  }
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole, double tol,
                     int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  if (lo == hi) return 0.0;
  const double m = 0.5 * (lo + hi);
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(m);
  const double whole = simpson(lo, fa, hi, fb, fm);
  return adaptive_step(f, lo, fa, hi, fb, m, fm, whole, tol, 48);
}

GridMin2d minimize_log_grid_2d(const std::function<double(double, double)>& f,
                               double x_lo, double x_hi, double y_lo, double y_hi,
                               int npts, int rounds) {
  double lx0 = std::log(x_lo), lx1 = std::log(x_hi);
  double ly0 = std::log(y_lo), ly1 = std::log(y_hi);
  const double lx_min = lx0, lx_max = lx1, ly_min = ly0, ly_max = ly1;
  GridMin2d best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (int round = 0; round < rounds; ++round) {
    const double dx = (lx1 - lx0) / (npts - 1);
    const double dy = (ly1 - ly0) / (npts - 1);
    int bi = 0, bj = 0;
    double round_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < npts; ++i) {
      for (int j = 0; j < npts; ++j) {
        const double v = f(std::exp(lx0 + dx * i), std::exp(ly0 + dy * j));
        if (v < round_best) {
          round_best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (round_best < best.value) {
      best = {std::exp(lx0 + dx * bi), std::exp(ly0 + dy * bj), round_best};
    }
    // Zoom to one grid cell on each side of the incumbent, clamped to the
    // original domain.
    const double nlx0 = std::max(lx_min, lx0 + dx * (bi - 1));
    const double nlx1 = std::min(lx_max, lx0 + dx * (bi + 1));
    const double nly0 = std::max(ly_min, ly0 + dy * (bj - 1));
    const double nly1 = std::min(ly_max, ly0 + dy * (bj + 1));
    lx0 = nlx0;
    lx1 = nlx1;
    ly0 = nly0;
    ly1 = nly1;
  }
  return best;
}

}  // namespace adax

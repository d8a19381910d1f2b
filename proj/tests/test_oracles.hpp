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

// Independent oracles shared by the test suites. Everything here is kept
// separate from the library's solver paths on purpose: brute-force sums,
// dense grids and exact rational arithmetic instead of the shipped
// optimizers.

#ifndef ADAX_TESTS_TEST_ORACLES_HPP_
#define ADAX_TESTS_TEST_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace adax_test {

// Exact binomial pmf via log-gamma.
inline double binom_pmf(int n, int j, double p) {
  if (j < 0 || j > n) return 0.0;
  if (p == 0.0) return j == 0 ? 1.0 : 0.0;
  if (p == 1.0) return j == n ? 1.0 : 0.0;
  const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                         std::lgamma(n - j + 1.0) + j * std::log(p) +
                         (n - j) * std::log1p(-p);
  return std::exp(log_pmf);
}

// P(B > t) for real t, B ~ Bin(n, p): strict inequality, summed upward.
inline double binom_tail_gt(int n, double p, double t) {
  const int lo = static_cast<int>(std::floor(t)) + 1;
  double s = 0.0;
  for (int j = n; j >= lo; --j) s += binom_pmf(n, j, p);
  return s;
}

// P(B >= t) for real t.
inline double binom_tail_ge(int n, double p, double t) {
  const int lo = static_cast<int>(std::ceil(t - 1e-12));
  double s = 0.0;
  for (int j = n; j >= lo; --j) s += binom_pmf(n, j, p);
  return s;
}

// Smallest tau' (on a fine grid) with P(B >= n(mu + tau')) <= beta/2.
inline double exact_binom_inverse_width(int n, double mu, double beta,
                                        double step = 1e-4) {
  for (double t = step; t < 1.0; t += step) {
    if (binom_tail_ge(n, mu, n * (mu + t)) <= beta / 2.0) return t;
  }
  return 1.0;
}

// Exact rational on __int128 with gcd normalization; plenty for the k=3
// transcript tree (denominators are products of small squares and 2^a 3^b).
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational make(long long n, long long d) {
    Rational r{n, d};
    r.normalize();
    return r;
  }

  Rational operator+(const Rational& o) const {
    Rational r{num * o.den + o.num * den, den * o.den};
    r.normalize();
    return r;
  }
  Rational operator*(const Rational& o) const {
    Rational r{num * o.num, den * o.den};
    r.normalize();
    return r;
  }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::runtime_error("rational division by zero");
    Rational r{num * o.den, den * o.num};
    r.normalize();
    return r;
  }
  bool operator<=(const Rational& o) const {
    return num * o.den <= o.num * den;
  }
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

// Dense log grid of `count` points between lo and hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    out.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
  }
  return out;
}

}  // namespace adax_test

#endif  // ADAX_TESTS_TEST_ORACLES_HPP_

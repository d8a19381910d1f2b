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

#include "adax/query.hpp"

#include <cmath>
#include <cstdio>

#include "adax/errors.hpp"

namespace adax {

namespace {

void check_feature_index(std::size_t idx, std::size_t d) {
  if (idx < 1 || idx >= d) {
    throw InvalidQueryError("feature index " + std::to_string(idx) +
                            " outside [1, " + std::to_string(d - 1) + "]");
  }
}

// Per-row weighted sums of the support columns over [row_begin, row_end).
std::vector<double> weighted_sums(const SignAgreementQuery& q, const SampleMatrix& x,
                                  std::size_t row_begin, std::size_t row_end) {
  std::vector<double> sums(row_end - row_begin, 0.0);
  for (const auto& [idx, w] : q.weights) {
    check_feature_index(idx, x.cols());
    const std::uint64_t* col = x.column_words(idx - 1);
    for (std::size_t r = row_begin; r < row_end; ++r) {
      const bool plus = (col[r >> 6] >> (r & 63)) & 1;
      sums[r - row_begin] += plus ? w : -w;
    }
  }
  return sums;
}

}  // namespace

std::string query_kind(const QuerySpec& q) {
  if (const auto* c = std::get_if<CorrelationQuery>(&q)) {
    return "correlation(" + std::to_string(c->index) + ")";
  }
  if (const auto* s = std::get_if<SignAgreementQuery>(&q)) {
    return std::string(s->include_target ? "sign_agreement(" : "sign_literal(") +
           std::to_string(s->weights.size()) + ")";
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "constant(%g)", std::get<ConstantQuery>(q).value);
  return buf;
}

double eval_query(const QuerySpec& q, const SampleMatrix& x, std::size_t row_begin,
                  std::size_t row_end) {
  if (row_begin >= row_end || row_end > x.rows()) {
    throw InvalidQueryError("empty or out-of-range row window");
  }
  if (const auto* c = std::get_if<ConstantQuery>(&q)) {
    if (!(c->value >= 0.0 && c->value <= 1.0)) {
      throw InvalidQueryError("constant query outside [0,1]");
    }
    return c->value;
  }
  const std::size_t d = x.cols();
  if (const auto* c = std::get_if<CorrelationQuery>(&q)) {
    check_feature_index(c->index, d);
    return x.column_agreement(c->index - 1, d - 1, row_begin, row_end);
  }
  const auto& s = std::get<SignAgreementQuery>(q);
  const std::vector<double> sums = weighted_sums(s, x, row_begin, row_end);
  const std::uint64_t* target = x.column_words(d - 1);
  std::size_t ones = 0;
  for (std::size_t r = row_begin; r < row_end; ++r) {
    const int sign = sums[r - row_begin] >= 0.0 ? 1 : -1;
    if (s.include_target) {
      const int t = ((target[r >> 6] >> (r & 63)) & 1) ? 1 : -1;
      ones += sign == t;
    } else {
      ones += sign > 0;
    }
  }
  return static_cast<double>(ones) / static_cast<double>(row_end - row_begin);
}

double eval_query(const QuerySpec& q, const SampleMatrix& x) {
  return eval_query(q, x, 0, x.rows());
}

namespace {

// P(sum_i w_i x_i >= 0) over independent signs, by exhaustive enumeration of
// the support's 2^s patterns.
double sign_prob_bruteforce(const std::vector<std::pair<std::size_t, double>>& weights,
                            const ProductDistribution& dist) {
  const std::size_t s = weights.size();
  double prob = 0.0;
  const std::uint64_t patterns = 1ULL << s;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double p = 1.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      const double bias = dist.biases[weights[i].first - 1];
      if (mask & (1ULL << i)) {
        p *= bias;
        sum += weights[i].second;
      } else {
        p *= 1.0 - bias;
        sum -= weights[i].second;
      }
    }
    if (sum >= 0.0) prob += p;
  }
  return prob;
}

void check_sign_query(const SignAgreementQuery& s, const ProductDistribution& dist) {
  for (const auto& [idx, w] : s.weights) {
    (void)w;
    check_feature_index(idx, dist.dim());
  }
}

}  // namespace

TruthEstimate true_value_exact(const QuerySpec& q, const ProductDistribution& dist) {
  if (const auto* c = std::get_if<ConstantQuery>(&q)) {
    return {c->value, 0.0};
  }
  const std::size_t d = dist.dim();
  if (const auto* c = std::get_if<CorrelationQuery>(&q)) {
    check_feature_index(c->index, d);
    const double pj = dist.biases[c->index - 1];
    const double pd = dist.biases[d - 1];
    return {(1.0 + (2.0 * pj - 1.0) * (2.0 * pd - 1.0)) / 2.0, 0.0};
  }
  const auto& s = std::get<SignAgreementQuery>(q);
  check_sign_query(s, dist);
  if (s.weights.size() > 20) {
    throw ModeUnsupportedError("exact truth needs a sign-query support of <= 20");
  }
  const double sign_prob = sign_prob_bruteforce(s.weights, dist);
  if (!s.include_target) return {sign_prob, 0.0};
  // x(d) is independent of the support, so the agreement factorizes.
  const double e_sign = 2.0 * sign_prob - 1.0;
  const double e_target = 2.0 * dist.biases[d - 1] - 1.0;
  return {(1.0 + e_sign * e_target) / 2.0, 0.0};
}

TruthEstimate true_value_sampled(const QuerySpec& q, const ProductDistribution& dist,
                                 std::size_t m, std::uint64_t seed) {
  if (m < 2) throw ParameterError("sampled truth needs m >= 2");
  if (const auto* c = std::get_if<ConstantQuery>(&q)) {
    return {c->value, 0.0};
  }
  Rng rng(seed);
  const std::size_t d = dist.dim();
  std::size_t ones = 0;
  if (const auto* c = std::get_if<CorrelationQuery>(&q)) {
    check_feature_index(c->index, d);
    const double pj = dist.biases[c->index - 1];
    const double pd = dist.biases[d - 1];
    for (std::size_t i = 0; i < m; ++i) {
      const bool xj = rng.bernoulli(pj);
      const bool xd = rng.bernoulli(pd);
      ones += xj == xd;
    }
  } else {
    const auto& s = std::get<SignAgreementQuery>(q);
    check_sign_query(s, dist);
    const double pd = dist.biases[d - 1];
    for (std::size_t i = 0; i < m; ++i) {
      double sum = 0.0;
      for (const auto& [idx, w] : s.weights) {
        sum += rng.bernoulli(dist.biases[idx - 1]) ? w : -w;
      }
      const int sign = sum >= 0.0 ? 1 : -1;
      if (s.include_target) {
        const int t = rng.bernoulli(pd) ? 1 : -1;
        ones += sign == t;
      } else {
        ones += sign > 0;
      }
    }
  }
  const double mean = static_cast<double>(ones) / static_cast<double>(m);
  return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(m - 1))};
}

}  // namespace adax

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

#ifndef ADAX_QUERY_HPP_
#define ADAX_QUERY_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "adax/dataset.hpp"

namespace adax {

// phi(x) = (1 + x(j) * x(d)) / 2 for a 1-based feature index j in [1, d-1];
// column d is the target.
struct CorrelationQuery {
  std::size_t index;
};

// phi(x) = (1 + sign(sum_i w_i x(i)) * t) / 2 with t = x(d) when
// include_target, else t = 1. Weight indices are 1-based features in
// [1, d-1]; sign(0) = +1.
struct SignAgreementQuery {
  std::vector<std::pair<std::size_t, double>> weights;  // sparse, sorted by index
  bool include_target = true;
};

struct ConstantQuery {
  double value;
};

using QuerySpec = std::variant<CorrelationQuery, SignAgreementQuery, ConstantQuery>;

// Short human-readable tag for CSV output ("correlation(7)", ...).
std::string query_kind(const QuerySpec& q);

// Empirical mean of phi over the rows of X. Deterministic; throws
// InvalidQueryError when an index is out of range for X.
double eval_query(const QuerySpec& q, const SampleMatrix& x);

// Same, restricted to rows [row_begin, row_end).
double eval_query(const QuerySpec& q, const SampleMatrix& x, std::size_t row_begin,
                  std::size_t row_end);

struct TruthEstimate {
  double value = 0.0;
  double std_err = 0.0;  // 0 for exact modes
};

// phi(D) in closed form: Correlation and Constant always; SignAgreement by
// brute force over the support's sign patterns (support <= 20 only).
// Throws ModeUnsupportedError otherwise.
TruthEstimate true_value_exact(const QuerySpec& q, const ProductDistribution& dist);

// Monte-Carlo phi(D) from m fresh samples, with its standard error.
TruthEstimate true_value_sampled(const QuerySpec& q, const ProductDistribution& dist,
                                 std::size_t m, std::uint64_t seed);

}  // namespace adax

#endif  // ADAX_QUERY_HPP_

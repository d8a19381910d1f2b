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

#ifndef ADAX_ADVERSARY_HPP_
#define ADAX_ADVERSARY_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "adax/query.hpp"

namespace adax {

// Which query indices are adaptive.
enum class AdaptiveRule {
  kSingleFinal,  // S = {k+1}: k correlations, one final adaptive query
  kQuadratic,    // S = {i : 1 < i <= k, i a perfect square}
};

// The analyst: correlation queries off the adaptive set, log-odds sign
// queries on it. Weights come from whatever answers the mechanism returned,
// clamped away from {0,1} before taking log-odds.
class StrategyState {
 public:
  struct Options {
    std::size_t k = 0;               // horizon (k+1 queries for kSingleFinal)
    AdaptiveRule rule = AdaptiveRule::kSingleFinal;
    double clamp_eps = 1e-3;         // in (0, 0.5)
    bool agreement_mode = true;      // multiply the sign by x(k+1)
  };

  explicit StrategyState(const Options& opts);

  // Next query, or empty once the horizon is exhausted or bottom was seen.
  std::optional<QuerySpec> next_query();

  // Records the mechanism's answer to the pending query; empty is bottom and
  // halts the strategy. Throws ConfigError without a pending query.
  void record_answer(std::optional<double> answer);

  bool is_adaptive_index(std::size_t j) const;
  bool halted() const { return halted_; }
  std::size_t issued() const { return next_ - 1; }
  std::size_t horizon() const;

 private:
  Options opts_;
  std::size_t next_ = 1;          // index of the next query to issue
  bool pending_ = false;
  bool halted_ = false;
  std::vector<double> answers_;   // a_1 .. a_{j-1}, bottom never stored
};

}  // namespace adax

#endif  // ADAX_ADVERSARY_HPP_

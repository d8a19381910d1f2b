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

#include "adax/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "adax/errors.hpp"

namespace adax {

StrategyState::StrategyState(const Options& opts) : opts_(opts) {
  if (opts_.k < 1) throw ConfigError("strategy horizon must be >= 1");
  if (!(opts_.clamp_eps > 0.0 && opts_.clamp_eps < 0.5)) {
    throw ConfigError("clamp_eps must be in (0, 0.5)");
  }
}

std::size_t StrategyState::horizon() const {
  return opts_.rule == AdaptiveRule::kSingleFinal ? opts_.k + 1 : opts_.k;
}

bool StrategyState::is_adaptive_index(std::size_t j) const {
  if (opts_.rule == AdaptiveRule::kSingleFinal) return j == opts_.k + 1;
  if (j <= 1 || j > opts_.k) return false;
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(j))));
  return root * root == j && root < j;
}

std::optional<QuerySpec> StrategyState::next_query() {
  if (halted_ || next_ > horizon()) return std::nullopt;
  if (pending_) throw ConfigError("previous query still awaiting an answer");
  pending_ = true;
  const std::size_t j = next_;
  if (!is_adaptive_index(j)) return QuerySpec{CorrelationQuery{j}};
  SignAgreementQuery q;
  q.include_target = opts_.agreement_mode;
  q.weights.reserve(answers_.size());
  for (std::size_t i = 1; i < j; ++i) {
    if (is_adaptive_index(i)) continue;  // weights only over nonadaptive answers
    const double clamped = std::clamp(answers_[i - 1], opts_.clamp_eps,
                                      1.0 - opts_.clamp_eps);
    q.weights.emplace_back(i, std::log(clamped / (1.0 - clamped)));
  }
  return QuerySpec{std::move(q)};
}

void StrategyState::record_answer(std::optional<double> answer) {
  if (!pending_) throw ConfigError("no pending query for this answer");
  pending_ = false;
  if (!answer.has_value()) {
    halted_ = true;
    return;
  }
  answers_.push_back(*answer);
  ++next_;
}

}  // namespace adax

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

#ifndef ADAX_TRANSCRIPT_HPP_
#define ADAX_TRANSCRIPT_HPP_

#include <cmath>
#include <optional>
#include <vector>

#include "adax/query.hpp"

namespace adax {

// One (point, width) response. An empty point is the bottom symbol. The
// failed flag marks answers produced through GnC's holdout path.
struct IntervalAnswer {
  std::optional<double> point;
  double width = 0.0;
  bool failed = false;

  bool is_bottom() const { return !point.has_value(); }
  // Coverage predicate: phi(D) strictly inside (point - width, point + width).
  bool covers(double truth) const {
    return point.has_value() && std::fabs(*point - truth) < width;
  }
};

struct TranscriptEntry {
  QuerySpec query;
  IntervalAnswer answer;
  double truth = 0.0;
  double truth_std_err = 0.0;
  double abs_error = 0.0;  // |point - truth| when point is present
  double beta_i = 0.0;     // per-query budget where the mechanism tracks one
};

// Ordered record of one analyst-vs-mechanism interaction.
struct Transcript {
  std::vector<TranscriptEntry> entries;
  bool terminated = false;  // bottom was emitted

  std::size_t answered() const {
    return entries.size() - (terminated ? 1 : 0);
  }
};

}  // namespace adax

#endif  // ADAX_TRANSCRIPT_HPP_

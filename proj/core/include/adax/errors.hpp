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

#ifndef ADAX_ERRORS_HPP_
#define ADAX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace adax {

// Query indices out of range, malformed specs.
class InvalidQueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact ground truth requested where only sampling is available.
class ModeUnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A halted mechanism (Thresholdout past budget, GnC after bottom) was asked
// for another answer.
class MechanismHaltedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Sample-splitting block index past the configured budget.
class BudgetExhaustedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad scalar parameters (nonpositive scales, out-of-range probabilities).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Experiment configuration rejected before any sampling happens.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File I/O failures, annotated with the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adax

#endif  // ADAX_ERRORS_HPP_

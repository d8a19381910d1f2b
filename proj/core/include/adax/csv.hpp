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

#ifndef ADAX_CSV_HPP_
#define ADAX_CSV_HPP_

#include <optional>
#include <string>
#include <vector>

#include "adax/bounds.hpp"
#include "adax/harness.hpp"
#include "adax/transcript.hpp"

namespace adax {

// Column layout of a simulation CSV. `answer` is empty on the bottom row;
// `failed` marks answers produced through a holdout path. Floats are printed
// with 17 significant digits, so parse(emit(rows)) reproduces the doubles
// exactly.
inline constexpr const char* kSimulationCsvHeader =
    "run_id,query_index,query_kind,answer,width,truth,abs_error,failed,beta_i";

struct SimCsvRow {
  std::size_t run_id = 0;
  std::size_t query_index = 0;
  std::string query_kind;
  std::optional<double> answer;
  double width = 0.0;
  double truth = 0.0;
  double abs_error = 0.0;
  bool failed = false;
  double beta_i = 0.0;

  bool operator==(const SimCsvRow&) const = default;
};

std::vector<SimCsvRow> simulation_rows(const std::vector<Transcript>& transcripts);
void emit_simulation_csv(const std::vector<SimCsvRow>& rows, const std::string& path);
std::vector<SimCsvRow> parse_simulation_csv(const std::string& path);

// Fraction of runs in a finished CSV containing any miss
// (|answer - truth| >= width on a non-bottom row). The audit recomputes the
// in-process coverage statistic from the file alone.
double audit_miss_fraction(const std::vector<SimCsvRow>& rows);
double audit_miss_fraction_file(const std::string& path);

inline constexpr const char* kBoundCsvHeader = "bound_name,n,k,beta,tau,optimizer";

struct BoundCsvRow {
  std::string bound_name;
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.0;
  double tau = 0.0;
  std::string optimizer;  // "key=value;key=value" with 17-digit values
};

std::string format_optimizer(const std::map<std::string, double>& optimizer);
void emit_bound_csv(const std::vector<BoundCsvRow>& rows, const std::string& path);

inline constexpr const char* kRmseCsvHeader =
    "k,upper_bound_rmse,realized_rmse_mean,realized_rmse_std,rho";

void emit_rmse_csv(const std::vector<RmseRow>& rows, const std::string& path);

// 17-significant-digit float formatting shared by every emitter.
std::string format_double(double v);

}  // namespace adax

#endif  // ADAX_CSV_HPP_

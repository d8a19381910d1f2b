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

#include "adax/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "adax/errors.hpp"

namespace adax {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<SimCsvRow> simulation_rows(const std::vector<Transcript>& transcripts) {
  std::vector<SimCsvRow> rows;
  for (std::size_t run = 0; run < transcripts.size(); ++run) {
    std::size_t index = 1;
    for (const auto& e : transcripts[run].entries) {
      SimCsvRow row;
      row.run_id = run;
      row.query_index = index++;
      row.query_kind = query_kind(e.query);
      row.answer = e.answer.point;
      row.width = e.answer.width;
      row.truth = e.truth;
      row.abs_error = e.abs_error;
      row.failed = e.answer.failed;
      row.beta_i = e.beta_i;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void emit_simulation_csv(const std::vector<SimCsvRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << kSimulationCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.run_id << ',' << r.query_index << ',' << r.query_kind << ','
        << (r.answer ? format_double(*r.answer) : std::string()) << ','
        << format_double(r.width) << ',' << format_double(r.truth) << ','
        << format_double(r.abs_error) << ',' << (r.failed ? 1 : 0) << ','
        << format_double(r.beta_i) << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<SimCsvRow> parse_simulation_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kSimulationCsvHeader) {
    throw IoError("unexpected simulation CSV header in " + path);
  }
  std::vector<SimCsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != 9) throw IoError("malformed row in " + path);
    SimCsvRow row;
    row.run_id = std::stoull(f[0]);
    row.query_index = std::stoull(f[1]);
    row.query_kind = f[2];
    if (!f[3].empty()) row.answer = std::stod(f[3]);
    row.width = std::stod(f[4]);
    row.truth = std::stod(f[5]);
    row.abs_error = std::stod(f[6]);
    row.failed = f[7] == "1";
    row.beta_i = std::stod(f[8]);
    rows.push_back(std::move(row));
  }
  return rows;
}

double audit_miss_fraction(const std::vector<SimCsvRow>& rows) {
  std::set<std::size_t> runs;
  std::set<std::size_t> missed;
  for (const auto& r : rows) {
    runs.insert(r.run_id);
    if (r.answer.has_value() && std::fabs(*r.answer - r.truth) >= r.width) {
      missed.insert(r.run_id);
    }
  }
  if (runs.empty()) return 0.0;
  return static_cast<double>(missed.size()) / static_cast<double>(runs.size());
}

double audit_miss_fraction_file(const std::string& path) {
  return audit_miss_fraction(parse_simulation_csv(path));
}

std::string format_optimizer(const std::map<std::string, double>& optimizer) {
  std::string out;
  for (const auto& [key, value] : optimizer) {
    if (!out.empty()) out.push_back(';');
    out += key;
    out.push_back('=');
    out += format_double(value);
  }
  return out;
}

void emit_bound_csv(const std::vector<BoundCsvRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << kBoundCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.bound_name << ',' << r.n << ',' << r.k << ',' << format_double(r.beta)
        << ',' << format_double(r.tau) << ',' << r.optimizer << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

void emit_rmse_csv(const std::vector<RmseRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << kRmseCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.k << ',' << format_double(r.upper_bound_rmse) << ','
        << format_double(r.realized_rmse_mean) << ','
        << format_double(r.realized_rmse_std) << ',' << format_double(r.rho) << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path);
}

}  // namespace adax

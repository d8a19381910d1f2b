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

#ifndef ADAX_DATASET_HPP_
#define ADAX_DATASET_HPP_

#include <cstdint>
#include <cstddef>
#include <vector>

#include "adax/rng.hpp"

namespace adax {

// A dataset of n rows over d signed binary features, stored as packed sign
// bits per column (bit set <=> +1). Column-major packing keeps the n*k query
// sweeps of the experiments cache-friendly. Immutable after construction.
class SampleMatrix {
 public:
  SampleMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // Cell value in {-1, +1}; row/col are 0-based here, the 1-based query
  // indexing is handled at the QuerySpec layer.
  int cell(std::size_t row, std::size_t col) const {
    return (words_[col * words_per_col_ + (row >> 6)] >> (row & 63)) & 1 ? 1 : -1;
  }

  void set_cell(std::size_t row, std::size_t col, int value);

  // Fraction of rows where columns a and b agree, i.e. the empirical mean of
  // (1 + x(a)x(b))/2. One XOR+popcount pass over the packed words.
  double column_agreement(std::size_t a, std::size_t b) const {
    return column_agreement(a, b, 0, rows_);
  }
  double column_agreement(std::size_t a, std::size_t b, std::size_t row_begin,
                          std::size_t row_end) const;

  // New matrix holding the given rows (in the given order).
  SampleMatrix select_rows(const std::vector<std::uint32_t>& rows) const;

  // First `head` rows and the remaining rows, as two matrices.
  std::pair<SampleMatrix, SampleMatrix> split_head(std::size_t head) const;

  const std::uint64_t* column_words(std::size_t col) const {
    return words_.data() + col * words_per_col_;
  }
  std::size_t words_per_col() const { return words_per_col_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_per_col_;
  std::vector<std::uint64_t> words_;
};

// Product distribution over {-1,+1}^d; biases[j] = P(coordinate j+1 = +1).
struct ProductDistribution {
  std::vector<double> biases;

  explicit ProductDistribution(std::vector<double> b);
  static ProductDistribution uniform(std::size_t d) {
    return ProductDistribution(std::vector<double>(d, 0.5));
  }
  std::size_t dim() const { return biases.size(); }
};

// X ~ D^n, bit-reproducible for a fixed seed.
SampleMatrix sample_dataset(const ProductDistribution& dist, std::size_t n,
                            std::uint64_t seed);
SampleMatrix sample_dataset(const ProductDistribution& dist, std::size_t n, Rng& rng);

// Random split into (front, back) of sizes (head, n-head) using rng for the
// permutation.
std::pair<SampleMatrix, SampleMatrix> random_split(const SampleMatrix& x,
                                                   std::size_t head, Rng& rng);

}  // namespace adax

#endif  // ADAX_DATASET_HPP_

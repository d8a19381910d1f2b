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

#include "adax/dataset.hpp"

#include <bit>
#include <utility>

#include "adax/errors.hpp"

namespace adax {

SampleMatrix::SampleMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_col_((rows + 63) / 64),
      words_(words_per_col_ * cols, 0) {
  if (rows < 1 || cols < 2) {
    throw ParameterError("SampleMatrix requires n >= 1 and d >= 2");
  }
}

void SampleMatrix::set_cell(std::size_t row, std::size_t col, int value) {
  std::uint64_t& w = words_[col * words_per_col_ + (row >> 6)];
  const std::uint64_t mask = 1ULL << (row & 63);
  if (value > 0) {
    w |= mask;
  } else {
    w &= ~mask;
  }
}

double SampleMatrix::column_agreement(std::size_t a, std::size_t b,
                                      std::size_t row_begin, std::size_t row_end) const {
  const std::uint64_t* wa = column_words(a);
  const std::uint64_t* wb = column_words(b);
  const std::size_t wlo = row_begin >> 6;
  const std::size_t whi = (row_end + 63) >> 6;
  std::size_t disagreements = 0;
  for (std::size_t w = wlo; w < whi; ++w) {
    std::uint64_t x = wa[w] ^ wb[w];
    if (w == wlo && (row_begin & 63)) x &= ~0ULL << (row_begin & 63);
    if (w == whi - 1 && (row_end & 63)) x &= (1ULL << (row_end & 63)) - 1;
    disagreements += std::popcount(x);
  }
  const std::size_t count = row_end - row_begin;
  return static_cast<double>(count - disagreements) / static_cast<double>(count);
}

SampleMatrix SampleMatrix::select_rows(const std::vector<std::uint32_t>& rows) const {
  SampleMatrix out(rows.size(), cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::uint64_t* src = column_words(c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::uint32_t s = rows[r];
      if ((src[s >> 6] >> (s & 63)) & 1) out.set_cell(r, c, 1);
    }
  }
  return out;
}

std::pair<SampleMatrix, SampleMatrix> SampleMatrix::split_head(std::size_t head) const {
  std::vector<std::uint32_t> front(head), back(rows_ - head);
  for (std::size_t r = 0; r < head; ++r) front[r] = static_cast<std::uint32_t>(r);
  for (std::size_t r = head; r < rows_; ++r) back[r - head] = static_cast<std::uint32_t>(r);
  return {select_rows(front), select_rows(back)};
}

ProductDistribution::ProductDistribution(std::vector<double> b) : biases(std::move(b)) {
  if (biases.size() < 2) throw ParameterError("ProductDistribution needs d >= 2");
  for (const double p : biases) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("bias outside [0,1]");
  }
}

SampleMatrix sample_dataset(const ProductDistribution& dist, std::size_t n, Rng& rng) {
  SampleMatrix x(n, dist.dim());
  const std::size_t wpc = x.words_per_col();
  for (std::size_t c = 0; c < dist.dim(); ++c) {
    const double p = dist.biases[c];
    auto* words = const_cast<std::uint64_t*>(x.column_words(c));
    if (p == 0.5) {
      // Raw generator words are exactly fair coin flips.
      for (std::size_t w = 0; w < wpc; ++w) words[w] = rng.next_u64();
      if (n & 63) words[wpc - 1] &= (1ULL << (n & 63)) - 1;
    } else if (p == 1.0) {
      for (std::size_t w = 0; w < wpc; ++w) words[w] = ~0ULL;
      if (n & 63) words[wpc - 1] &= (1ULL << (n & 63)) - 1;
    } else if (p == 0.0) {
      // already zero
    } else {
      for (std::size_t r = 0; r < n; ++r) {
        if (rng.bernoulli(p)) words[r >> 6] |= 1ULL << (r & 63);
      }
    }
  }
  return x;
}

SampleMatrix sample_dataset(const ProductDistribution& dist, std::size_t n,
                            std::uint64_t seed) {
  Rng rng(seed);
  return sample_dataset(dist, n, rng);
}

std::pair<SampleMatrix, SampleMatrix> random_split(const SampleMatrix& x,
                                                   std::size_t head, Rng& rng) {
  if (head == 0 || head >= x.rows()) throw ParameterError("split sizes must be positive");
  std::vector<std::uint32_t> perm(x.rows());
  for (std::size_t r = 0; r < perm.size(); ++r) perm[r] = static_cast<std::uint32_t>(r);
  for (std::size_t r = perm.size() - 1; r > 0; --r) {
    const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (r + 1));
    std::swap(perm[r], perm[j]);
  }
  std::vector<std::uint32_t> front(perm.begin(), perm.begin() + static_cast<long>(head));
  std::vector<std::uint32_t> back(perm.begin() + static_cast<long>(head), perm.end());
  return {x.select_rows(front), x.select_rows(back)};
}

}  // namespace adax

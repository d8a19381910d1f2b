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

#ifndef ADAX_RNG_HPP_
#define ADAX_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <string_view>

namespace adax {

// Splittable counter-style generator built on the SplitMix64 finalizer.
// Streams are derived from (base_seed, run_index, purpose) so that data
// sampling, mechanism noise and ground-truth sampling never share state and
// runs can execute concurrently without coordination.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller; both uniforms drawn fresh so the stream advances by exactly
  // two words per variate.
  double normal(double mean = 0.0, double stddev = 1.0) {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Laplace(scale) via inverse CDF.
  double laplace(double scale) {
    const double u = uniform() - 0.5;
    const double s = u < 0.0 ? -1.0 : 1.0;
    return -scale * s * std::log1p(-2.0 * std::fabs(u));
  }

 private:
  std::uint64_t state_;
};

// 64-bit stream id from (base_seed, run_index, purpose tag).
std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t run_index,
                                 std::string_view purpose);

inline Rng derive_stream(std::uint64_t base_seed, std::uint64_t run_index,
                         std::string_view purpose) {
  return Rng(derive_stream_seed(base_seed, run_index, purpose));
}

}  // namespace adax

#endif  // ADAX_RNG_HPP_

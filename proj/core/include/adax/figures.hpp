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

#ifndef ADAX_FIGURES_HPP_
#define ADAX_FIGURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace adax {

enum class FigureScale { kDesk, kPaper };

// Known figure ids: intro-left, intro-right, two-round, gnc-lowvar, gnc-beta,
// gnc-guess, gnc-responsive.
std::vector<std::string> figure_ids();

// Writes <id>.csv plus <id>_meta.json (the tuned hyperparameters and seed)
// into out_dir. Desk scale keeps every recipe in CI territory; paper scale
// reruns the full-size experiment grids.
void emit_figure(const std::string& id, FigureScale scale, const std::string& out_dir,
                 std::uint64_t seed);

}  // namespace adax

#endif  // ADAX_FIGURES_HPP_

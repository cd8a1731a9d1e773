// Copyright 2026 The HQA Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>

namespace hqa::optim {

/// Per-iteration circuit samples (1 + P_E)/eps_xi^2 + (1 + P_D)/eps_fid^2.
/// Throws std::invalid_argument for non-positive tolerances.
[[nodiscard]] double sample_budget(std::size_t encoder_params, std::size_t decoder_params,
                                   double eps_latent, double eps_fidelity);

/// Same count expressed with shot numbers M = 1/eps^2.
[[nodiscard]] double sample_budget_for_shots(std::size_t encoder_params,
                                             std::size_t decoder_params,
                                             std::size_t encoder_shots,
                                             std::size_t fidelity_shots);

/// Shots needed to reach a standard error of eps on a +-1 mean: 1/eps^2, rounded.
[[nodiscard]] std::size_t shots_for_tolerance(double eps);

} // namespace hqa::optim

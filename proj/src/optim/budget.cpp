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

#include "hqa/optim/budget.hpp"

#include <cmath>
#include <stdexcept>

namespace hqa::optim {

double sample_budget(std::size_t encoder_params, std::size_t decoder_params,
                     double eps_latent, double eps_fidelity) {
    if (!(eps_latent > 0.0) || !(eps_fidelity > 0.0)) {
        throw std::invalid_argument("sample_budget: tolerances must be > 0");
    }
    return (1.0 + static_cast<double>(encoder_params)) / (eps_latent * eps_latent) +
           (1.0 + static_cast<double>(decoder_params)) / (eps_fidelity * eps_fidelity);
}

double sample_budget_for_shots(std::size_t encoder_params, std::size_t decoder_params,
                               std::size_t encoder_shots, std::size_t fidelity_shots) {
    return (1.0 + static_cast<double>(encoder_params)) * static_cast<double>(encoder_shots) +
           (1.0 + static_cast<double>(decoder_params)) * static_cast<double>(fidelity_shots);
}

std::size_t shots_for_tolerance(double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("shots_for_tolerance: eps must be > 0");
    }
    return static_cast<std::size_t>(std::llround(1.0 / (eps * eps)));
}

} // namespace hqa::optim

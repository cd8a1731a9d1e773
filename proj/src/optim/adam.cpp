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

#include "hqa/optim/adam.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hqa::optim {

AdamState AdamState::create(const AdamConfig &config, std::span<const std::size_t> sizes) {
    AdamState s;
    s.config = config;
    for (const auto n : sizes) {
        s.first.emplace_back(n, 0.0);
        s.second.emplace_back(n, 0.0);
    }
    return s;
}

void adam_step(AdamState &state, std::span<const std::span<double>> params,
               std::span<const std::span<const double>> grads) {
    if (params.size() != state.first.size() || grads.size() != state.first.size()) {
        throw std::invalid_argument("adam_step: parameter group count mismatch");
    }
    for (std::size_t g = 0; g < params.size(); ++g) {
        if (params[g].size() != state.first[g].size() ||
            grads[g].size() != state.first[g].size()) {
            throw std::invalid_argument("adam_step: group shape mismatch");
        }
    }
    if (state.step == std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("adam_step: timestep overflow");
    }
    ++state.step;
    const auto &c = state.config;
    const double t = static_cast<double>(state.step);
    const double correct1 = 1.0 - std::pow(c.beta1, t);
    const double correct2 = 1.0 - std::pow(c.beta2, t);
    for (std::size_t g = 0; g < params.size(); ++g) {
        const double step = c.step_for(g);
        auto &m = state.first[g];
        auto &v = state.second[g];
        for (std::size_t i = 0; i < m.size(); ++i) {
            const double gi = grads[g][i];
            m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * gi;
            v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * gi * gi;
            const double m_hat = m[i] / correct1;
            const double v_hat = v[i] / correct2;
            params[g][i] -= step * m_hat / (std::sqrt(v_hat) + c.epsilon);
        }
    }
}

} // namespace hqa::optim

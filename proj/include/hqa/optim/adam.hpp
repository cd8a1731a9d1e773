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
#include <cstdint>
#include <span>
#include <vector>

namespace hqa::optim {

struct AdamConfig {
    double step_size = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    /// Per-group step sizes; empty means `step_size` for every group.
    std::vector<double> group_step_sizes;

    [[nodiscard]] double step_for(std::size_t group) const {
        return group < group_step_sizes.size() ? group_step_sizes[group] : step_size;
    }
};

/// Moment estimates for several parameter groups updated jointly.
struct AdamState {
    AdamConfig config;
    std::vector<std::vector<double>> first;
    std::vector<std::vector<double>> second;
    std::uint64_t step = 0;

    /// Fresh state shaped like the given group sizes.
    static AdamState create(const AdamConfig &config, std::span<const std::size_t> sizes);
};

/// Bias-corrected Adam update of every group in place; increments `step`.
void adam_step(AdamState &state, std::span<const std::span<double>> params,
               std::span<const std::span<const double>> grads);

} // namespace hqa::optim

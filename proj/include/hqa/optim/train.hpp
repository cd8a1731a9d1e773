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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqa/common/rng.hpp"
#include "hqa/common/table.hpp"
#include "hqa/data/dataset.hpp"
#include "hqa/model/hqa.hpp"
#include "hqa/optim/adam.hpp"

namespace hqa::optim {

struct TrainConfig {
    std::size_t batch_size = 2;
    std::size_t epochs = 10;
    std::uint64_t seed = 0;
    model::GradientMode mode = model::GradientMode::exact();
    std::size_t bin_width = 100;
    AdamConfig adam;                ///< step_size applies to the encoder angles
    double ann_step_size = 0.003;   ///< Adam step size of the ANN weight group

    /// Adam settings with the {alpha, ann} group step sizes filled in.
    [[nodiscard]] AdamConfig grouped_adam() const;
    void validate() const;
};

/// Where training states come from. With `fresh` set, every draw samples a new
/// spec from the config ranges; otherwise draws pick uniformly (with
/// replacement) from a fixed set of `size` specs. Non-smooth states always get
/// fresh noise per draw.
struct TrainingSource {
    data::DatasetConfig data;
    std::size_t size = 800; ///< K, the nominal training-set size
    bool fresh = true;
};

/// iterations = ceil(epochs * K / batch_size)
[[nodiscard]] std::uint64_t iteration_count(const TrainingSource &source,
                                            const TrainConfig &config);

/// Running batch loss, one entry per iteration.
struct LossHistory {
    std::vector<double> per_iteration;

    /// Mean loss over consecutive bins; length ceil(iterations / bin_width).
    [[nodiscard]] std::vector<double> binned(std::size_t bin_width) const;
    [[nodiscard]] table::Table binned_table(std::size_t bin_width) const;
};

/// Everything needed to continue a run exactly where it stopped.
struct TrainingState {
    model::HqaModel model;
    AdamState adam;
    Rng rng;
    std::uint64_t iteration = 0;
    LossHistory history;
    std::vector<data::DatasetItem> fixed_items;
};

/// Model initialization stream for a seed.
[[nodiscard]] model::HqaModel initial_model(const model::HqaShape &shape, std::uint64_t seed);

[[nodiscard]] TrainingState start_training(model::HqaModel model, const TrainingSource &source,
                                           const TrainConfig &config);

/// Advances until state.iteration == target (no-op if already there).
/// Throws TrainingAborted on a non-finite loss.
void continue_training(TrainingState &state, const TrainingSource &source,
                       const TrainConfig &config, std::uint64_t target);

struct TrainResult {
    model::HqaModel model;
    LossHistory history;
    TrainingState state;
};

[[nodiscard]] TrainResult train(model::HqaModel model, const TrainingSource &source,
                                const TrainConfig &config);

/// Seed of ensemble member i.
[[nodiscard]] std::uint64_t member_seed(std::uint64_t base_seed, std::size_t member);

/// Independently seeded models trained concurrently; results in member order.
[[nodiscard]] std::vector<TrainResult> train_ensemble(const model::HqaShape &shape,
                                                      const TrainingSource &source,
                                                      const TrainConfig &config,
                                                      std::size_t members);

/// Averages per-iteration losses across members (equal lengths required).
[[nodiscard]] LossHistory mean_history(const std::vector<TrainResult> &results);

[[nodiscard]] nlohmann::json checkpoint_json(const TrainingState &state,
                                             const nlohmann::json &metadata);
/// Returns the training state and writes the stored metadata into *metadata.
[[nodiscard]] TrainingState checkpoint_from_json(const nlohmann::json &j,
                                                 nlohmann::json *metadata = nullptr);

} // namespace hqa::optim

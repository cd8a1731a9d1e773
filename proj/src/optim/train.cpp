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

#include "hqa/optim/train.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "hqa/common/error.hpp"

namespace hqa::optim {

namespace {

constexpr std::uint64_t kModelStream = 1;
constexpr std::uint64_t kTrainStream = 2;
constexpr std::uint64_t kFixedSetStream = 3;

std::vector<sim::StateVector> draw_batch(TrainingState &state, const TrainingSource &source,
                                         std::size_t batch_size) {
    std::vector<sim::StateVector> batch;
    batch.reserve(batch_size);
    for (std::size_t b = 0; b < batch_size; ++b) {
        data::DatasetItem item;
        if (source.fresh) {
            item = data::sample_item(source.data, state.rng);
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, state.fixed_items.size() - 1);
            item = state.fixed_items[pick(state.rng)];
            if (item.label == data::StateClass::NonSmooth) {
                item.seed = state.rng();
            }
        }
        batch.push_back(item.make_state());
    }
    return batch;
}

} // namespace

AdamConfig TrainConfig::grouped_adam() const {
    AdamConfig c = adam;
    c.group_step_sizes = {adam.step_size, ann_step_size};
    return c;
}

void TrainConfig::validate() const {
    if (batch_size < 1) {
        throw ConfigError("batch_size must be >= 1");
    }
    if (bin_width < 1) {
        throw ConfigError("bin_width must be >= 1");
    }
    if (!(adam.step_size > 0.0) || !(ann_step_size > 0.0)) {
        throw ConfigError("Adam step sizes must be > 0");
    }
    if (!mode.is_exact() && (mode.encoder_shots == 0 || mode.fidelity_shots == 0)) {
        throw ConfigError("sampled gradient mode needs both shot counts >= 1");
    }
}

std::uint64_t iteration_count(const TrainingSource &source, const TrainConfig &config) {
    const std::uint64_t draws = static_cast<std::uint64_t>(config.epochs) * source.size;
    return (draws + config.batch_size - 1) / config.batch_size;
}

std::vector<double> LossHistory::binned(std::size_t bin_width) const {
    if (bin_width == 0) {
        throw std::invalid_argument("bin width must be >= 1");
    }
    std::vector<double> out;
    for (std::size_t start = 0; start < per_iteration.size(); start += bin_width) {
        const std::size_t stop = std::min(per_iteration.size(), start + bin_width);
        double acc = 0.0;
        for (std::size_t i = start; i < stop; ++i) {
            acc += per_iteration[i];
        }
        out.push_back(acc / static_cast<double>(stop - start));
    }
    return out;
}

table::Table LossHistory::binned_table(std::size_t bin_width) const {
    table::Table t;
    t.meta["bin_width"] = std::to_string(bin_width);
    t.columns = {"iteration_bin", "mean_loss"};
    const auto bins = binned(bin_width);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        t.rows.push_back({std::to_string(i), table::format_double(bins[i])});
    }
    return t;
}

model::HqaModel initial_model(const model::HqaShape &shape, std::uint64_t seed) {
    Rng rng(derive_seed(seed, kModelStream));
    return model::HqaModel::create(shape, rng);
}

TrainingState start_training(model::HqaModel model, const TrainingSource &source,
                             const TrainConfig &config) {
    config.validate();
    source.data.validate();
    model.validate();
    if (source.data.num_qubits != model.n()) {
        throw ConfigError("training data has " + std::to_string(source.data.num_qubits) +
                          " qubits, model expects " + std::to_string(model.n()));
    }
    if (source.size < 1) {
        throw ConfigError("training set size must be >= 1");
    }
    const std::size_t sizes[] = {model.alpha.size(), model.ann.parameter_count()};
    TrainingState state{std::move(model), AdamState::create(config.grouped_adam(), sizes),
                        Rng(derive_seed(config.seed, kTrainStream)), 0, {}, {}};
    if (!source.fresh) {
        Rng items_rng(derive_seed(config.seed, kFixedSetStream));
        state.fixed_items = data::build_training_set(source.data, source.size, items_rng);
    }
    return state;
}

void continue_training(TrainingState &state, const TrainingSource &source,
                       const TrainConfig &config, std::uint64_t target) {
    config.validate();
    while (state.iteration < target) {
        const auto batch = draw_batch(state, source, config.batch_size);
        const auto grad = model::grad_full(state.model, batch, config.mode, &state.rng);
        if (!std::isfinite(grad.loss)) {
            throw TrainingAborted("non-finite loss at iteration " +
                                      std::to_string(state.iteration),
                                  static_cast<long>(state.iteration));
        }
        state.history.per_iteration.push_back(grad.loss);

        auto ann_flat = state.model.ann.flatten();
        const auto ann_grad = grad.d_ann.flatten();
        const std::span<double> params[] = {state.model.alpha.values(), ann_flat};
        const std::span<const double> grads[] = {grad.d_alpha, ann_grad};
        adam_step(state.adam, params, grads);
        state.model.ann.assign(ann_flat);
        ++state.iteration;
    }
}

TrainResult train(model::HqaModel model, const TrainingSource &source,
                  const TrainConfig &config) {
    auto state = start_training(std::move(model), source, config);
    continue_training(state, source, config, iteration_count(source, config));
    return {state.model, state.history, state};
}

std::uint64_t member_seed(std::uint64_t base_seed, std::size_t member) {
    return derive_seed(base_seed, 1000 + member);
}

std::vector<TrainResult> train_ensemble(const model::HqaShape &shape,
                                        const TrainingSource &source,
                                        const TrainConfig &config, std::size_t members) {
    const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
    std::vector<TrainResult> results;
    results.reserve(members);
    auto run = [&](std::size_t i) {
        TrainConfig c = config;
        c.seed = member_seed(config.seed, i);
        return train(initial_model(shape, c.seed), source, c);
    };
    if (workers == 1) {
        for (std::size_t i = 0; i < members; ++i) {
            results.push_back(run(i));
        }
        return results;
    }
    for (std::size_t start = 0; start < members; start += workers) {
        std::vector<std::future<TrainResult>> pending;
        for (std::size_t i = start; i < std::min(members, start + workers); ++i) {
            pending.push_back(std::async(std::launch::async, run, i));
        }
        for (auto &f : pending) {
            results.push_back(f.get());
        }
    }
    return results;
}

LossHistory mean_history(const std::vector<TrainResult> &results) {
    LossHistory out;
    if (results.empty()) {
        return out;
    }
    const std::size_t len = results.front().history.per_iteration.size();
    out.per_iteration.assign(len, 0.0);
    for (const auto &r : results) {
        if (r.history.per_iteration.size() != len) {
            throw std::invalid_argument("mean_history: histories differ in length");
        }
        for (std::size_t i = 0; i < len; ++i) {
            out.per_iteration[i] += r.history.per_iteration[i];
        }
    }
    for (auto &x : out.per_iteration) {
        x /= static_cast<double>(results.size());
    }
    return out;
}

nlohmann::json checkpoint_json(const TrainingState &state, const nlohmann::json &metadata) {
    nlohmann::json j;
    j["format"] = "hqa-checkpoint-v1";
    j["model"] = model::model_to_json(state.model);
    auto &t = j["training"];
    t["iteration"] = state.iteration;
    t["rng"] = save_rng(state.rng);
    t["losses"] = state.history.per_iteration;
    t["adam"] = {{"step", state.adam.step},
                 {"step_size", state.adam.config.step_size},
                 {"beta1", state.adam.config.beta1},
                 {"beta2", state.adam.config.beta2},
                 {"epsilon", state.adam.config.epsilon},
                 {"group_step_sizes", state.adam.config.group_step_sizes},
                 {"first", state.adam.first},
                 {"second", state.adam.second}};
    const auto manifest = data::manifest_table(state.fixed_items);
    t["fixed_items"] = table::to_string(manifest);
    j["metadata"] = metadata;
    return j;
}

TrainingState checkpoint_from_json(const nlohmann::json &j, nlohmann::json *metadata) {
    try {
        if (j.at("format").get<std::string>() != "hqa-checkpoint-v1") {
            throw FormatError("unsupported checkpoint format");
        }
        TrainingState s{model::model_from_json(j.at("model")), {}, Rng{}, 0, {}, {}};
        const auto &t = j.at("training");
        s.iteration = t.at("iteration").get<std::uint64_t>();
        load_rng(s.rng, t.at("rng").get<std::string>());
        s.history.per_iteration = t.at("losses").get<std::vector<double>>();
        const auto &a = t.at("adam");
        s.adam.step = a.at("step").get<std::uint64_t>();
        s.adam.config.step_size = a.at("step_size").get<double>();
        s.adam.config.beta1 = a.at("beta1").get<double>();
        s.adam.config.beta2 = a.at("beta2").get<double>();
        s.adam.config.epsilon = a.at("epsilon").get<double>();
        s.adam.config.group_step_sizes = a.at("group_step_sizes").get<std::vector<double>>();
        s.adam.first = a.at("first").get<std::vector<std::vector<double>>>();
        s.adam.second = a.at("second").get<std::vector<std::vector<double>>>();
        s.fixed_items = data::items_from_table(
            table::from_string(t.at("fixed_items").get<std::string>()));
        if (s.adam.first.size() != 2 || s.adam.first[0].size() != s.model.alpha.size() ||
            s.adam.first[1].size() != s.model.ann.parameter_count()) {
            throw FormatError("checkpoint optimizer state does not match the model");
        }
        if (metadata != nullptr) {
            *metadata = j.value("metadata", nlohmann::json::object());
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed checkpoint: ") + e.what());
    }
}

} // namespace hqa::optim

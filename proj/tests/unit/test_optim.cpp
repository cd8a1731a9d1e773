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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hqa/common/error.hpp"
#include "hqa/optim/budget.hpp"
#include "hqa/optim/train.hpp"

using namespace hqa;
using namespace hqa::optim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("first Adam step moves every parameter by the step size", "[optim]") {
    AdamConfig cfg;
    cfg.step_size = 0.1;
    const std::size_t sizes[] = {3};
    auto state = AdamState::create(cfg, sizes);
    std::vector<double> p = {1.0, -2.0, 0.5};
    const std::vector<double> g = {0.3, -4.0, 1e-3};
    const std::span<double> ps[] = {p};
    const std::span<const double> gs[] = {g};
    adam_step(state, ps, gs);
    // m_hat = g and v_hat = g^2 at t = 1, so the update is gamma g / (|g| + eps).
    CHECK_THAT(p[0], WithinAbs(1.0 - 0.1 * 0.3 / (0.3 + 1e-8), 1e-15));
    CHECK_THAT(p[1], WithinAbs(-2.0 + 0.1 * 4.0 / (4.0 + 1e-8), 1e-15));
    CHECK_THAT(p[2], WithinAbs(0.5 - 0.1 * 1e-3 / (1e-3 + 1e-8), 1e-15));
    CHECK(state.step == 1);
}

TEST_CASE("Adam second step by hand", "[optim]") {
    AdamConfig cfg;
    const std::size_t sizes[] = {1};
    auto state = AdamState::create(cfg, sizes);
    std::vector<double> p = {0.0};
    const std::span<double> ps[] = {p};
    std::vector<double> g = {1.0};
    const std::span<const double> gs[] = {g};
    adam_step(state, ps, gs);
    g[0] = -2.0;
    adam_step(state, ps, gs);
    const double m = 0.9 * 0.1 + 0.1 * -2.0;
    const double v = 0.999 * 0.001 + 0.001 * 4.0;
    const double m_hat = m / (1 - 0.81);
    const double v_hat = v / (1 - 0.999 * 0.999);
    CHECK_THAT(p[0], WithinAbs(-0.1 / (1.0 + 1e-8) - 0.1 * m_hat / (std::sqrt(v_hat) + 1e-8), 1e-14));
}

TEST_CASE("Adam group step sizes", "[optim]") {
    AdamConfig cfg;
    cfg.group_step_sizes = {0.1, 0.01};
    const std::size_t sizes[] = {1, 1};
    auto state = AdamState::create(cfg, sizes);
    std::vector<double> a = {0.0};
    std::vector<double> b = {0.0};
    const std::vector<double> g = {1.0};
    const std::span<double> ps[] = {a, b};
    const std::span<const double> gs[] = {g, g};
    adam_step(state, ps, gs);
    CHECK_THAT(a[0], WithinAbs(-0.1, 1e-8));
    CHECK_THAT(b[0], WithinAbs(-0.01, 1e-9));
}

TEST_CASE("Adam rejects mismatched shapes", "[optim]") {
    const std::size_t sizes[] = {2};
    auto state = AdamState::create({}, sizes);
    std::vector<double> p = {0.0};
    const std::vector<double> g = {0.0};
    const std::span<double> ps[] = {p};
    const std::span<const double> gs[] = {g};
    CHECK_THROWS(adam_step(state, ps, gs));
}

TEST_CASE("Adam minimizes a quadratic", "[optim]") {
    AdamConfig cfg;
    cfg.step_size = 0.05;
    const std::size_t sizes[] = {2};
    auto state = AdamState::create(cfg, sizes);
    std::vector<double> p = {3.0, -2.0};
    for (int t = 0; t < 2000; ++t) {
        const std::vector<double> g = {2.0 * (p[0] - 1.0), 8.0 * (p[1] + 0.5)};
        const std::span<double> ps[] = {p};
        const std::span<const double> gs[] = {g};
        adam_step(state, ps, gs);
    }
    CHECK_THAT(p[0], WithinAbs(1.0, 1e-3));
    CHECK_THAT(p[1], WithinAbs(-0.5, 1e-3));
}

TEST_CASE("sample budget arithmetic", "[optim]") {
    CHECK(sample_budget(48, 28, 0.01, 0.01) == 780000.0);
    CHECK_THAT(sample_budget(10, 20, 0.1, 0.05), WithinRel(11 / 0.01 + 21 / 0.0025, 1e-12));
    CHECK(sample_budget_for_shots(48, 28, 10000, 10000) == 780000.0);
    CHECK(shots_for_tolerance(0.01) == 10000);
    CHECK_THROWS(sample_budget(1, 1, 0.0, 0.1));
    CHECK_THROWS(sample_budget(1, 1, 0.1, -1.0));
}

TEST_CASE("iteration count", "[optim]") {
    TrainingSource src;
    src.size = 800;
    TrainConfig cfg;
    cfg.epochs = 10;
    cfg.batch_size = 2;
    CHECK(iteration_count(src, cfg) == 4000);
    src.size = 801;
    CHECK(iteration_count(src, cfg) == 4005);
}

TEST_CASE("binned loss history", "[optim]") {
    LossHistory h{{1.0, 3.0, 5.0, 7.0, 9.0}};
    const auto b = h.binned(2);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == 2.0);
    CHECK(b[1] == 6.0);
    CHECK(b[2] == 9.0);
    const auto t = h.binned_table(2);
    CHECK(t.rows.size() == 3);
}

namespace {

TrainingSource small_source() {
    TrainingSource src;
    src.data.num_qubits = 2;
    src.size = 20;
    return src;
}

TrainConfig small_config() {
    TrainConfig cfg;
    cfg.epochs = 2;
    cfg.seed = 42;
    cfg.adam.step_size = 0.05;
    cfg.ann_step_size = 0.01;
    return cfg;
}

} // namespace

TEST_CASE("seeded training is reproducible", "[optim]") {
    const model::HqaShape shape{2, 3, 2, 2};
    const auto src = small_source();
    const auto cfg = small_config();
    const auto a = train(initial_model(shape, cfg.seed), src, cfg);
    const auto b = train(initial_model(shape, cfg.seed), src, cfg);
    CHECK(a.history.per_iteration == b.history.per_iteration);
    CHECK(a.model == b.model);
    CHECK(a.history.per_iteration.size() == 20);
}

TEST_CASE("resume from a checkpoint follows the uninterrupted trajectory", "[optim]") {
    const model::HqaShape shape{2, 3, 2, 2};
    for (bool fresh : {true, false}) {
        auto src = small_source();
        src.fresh = fresh;
        src.data.kind = data::DatasetKind::SkewBoth;
        const auto cfg = small_config();
        const auto full = train(initial_model(shape, cfg.seed), src, cfg);

        auto state = start_training(initial_model(shape, cfg.seed), src, cfg);
        continue_training(state, src, cfg, 7);
        const auto text = checkpoint_json(state, {{"note", "half"}}).dump();
        nlohmann::json meta;
        auto resumed = checkpoint_from_json(nlohmann::json::parse(text), &meta);
        CHECK(meta.at("note") == "half");
        continue_training(resumed, src, cfg, iteration_count(src, cfg));
        CHECK(resumed.history.per_iteration == full.history.per_iteration);
        CHECK(resumed.model == full.model);
    }
}

TEST_CASE("ensemble members differ and average", "[optim]") {
    const model::HqaShape shape{2, 3, 2, 2};
    const auto src = small_source();
    auto cfg = small_config();
    cfg.epochs = 1;
    const auto runs = train_ensemble(shape, src, cfg, 3);
    REQUIRE(runs.size() == 3);
    CHECK_FALSE(runs[0].model == runs[1].model);
    const auto mean = mean_history(runs);
    CHECK_THAT(mean.per_iteration[0],
               WithinAbs((runs[0].history.per_iteration[0] + runs[1].history.per_iteration[0] +
                          runs[2].history.per_iteration[0]) / 3.0, 1e-15));
}

TEST_CASE("training lowers the loss on a tiny problem", "[optim]") {
    const model::HqaShape shape{2, 2, 2, 2};
    auto src = small_source();
    src.size = 200;
    auto cfg = small_config();
    cfg.epochs = 4;
    const auto r = train(initial_model(shape, 3), src, cfg);
    const auto bins = r.history.binned(100);
    CHECK(bins.back() < bins.front());
}

TEST_CASE("invalid training configuration", "[optim]") {
    TrainConfig cfg;
    cfg.batch_size = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    TrainConfig lr;
    lr.ann_step_size = 0.0;
    CHECK_THROWS_AS(lr.validate(), ConfigError);
}

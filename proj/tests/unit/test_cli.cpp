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

#include <filesystem>
#include <map>

#include "hqa/cli/commands.hpp"
#include "hqa/cli/config.hpp"
#include "hqa/cli/experiments.hpp"
#include "hqa/common/error.hpp"
#include "hqa/data/dataset.hpp"
#include "hqa/optim/train.hpp"

using namespace hqa;
using namespace hqa::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const auto p = fs::temp_directory_path() / ("hqa_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::map<std::string, std::string> snapshot(const fs::path &root) {
    std::map<std::string, std::string> files;
    for (const auto &e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) {
            files[fs::relative(e.path(), root).string()] = table::read_text(e.path().string());
        }
    }
    return files;
}

std::vector<std::string> tiny(const fs::path &dir) {
    return {"model.n=3",      "model.v=4",        "data.kind=skew_both", "data.size=30",
            "train.epochs=1", "train.ensemble=2", "eval.test_size=40",   "output_dir=" + dir.string()};
}

} // namespace

TEST_CASE("default configuration resolves and validates", "[cli]") {
    const auto c = load_config("", {});
    CHECK(c.shape.input_qubits == 5);
    CHECK(c.shape.latent_dim == 12);
    CHECK(c.train.batch_size == 2);
    CHECK(c.train.adam.step_size == 0.1);
    CHECK(c.analysis.test_fraction == 0.3);
    CHECK(config_hash(c).size() == 16);
}

TEST_CASE("configuration round-trips through JSON", "[cli]") {
    const auto c = load_config("", {"model.topology=ring", "data.kind=gaussian_mu_only",
                                    "analysis.kernel=poly", "analysis.degree=3",
                                    "analysis.slice=top", "data.mean_lo=-4"});
    const auto back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK(config_hash(back) == config_hash(c));
    CHECK(back.shape.topology == ansatz::Topology::Ring);
    CHECK(back.analysis.kernel.degree == 3);
    CHECK(*back.source.data.mean_lo == -4.0);
}

TEST_CASE("overrides are typed and checked", "[cli]") {
    auto j = default_config_json();
    apply_override(j, "model.v=7");
    apply_override(j, "data.fresh=false");
    apply_override(j, "experiment=gaussian");
    CHECK(j["model"]["v"] == 7);
    CHECK(j["data"]["fresh"] == false);
    CHECK(j["experiment"] == "gaussian");
    CHECK_THROWS_AS(apply_override(j, "model.w=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(j, "model=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(j, "noequals"), ConfigError);
}

TEST_CASE("unknown keys and invalid values are rejected", "[cli]") {
    CHECK_THROWS_AS(merge_config(nlohmann::json{{"modle", {{"n", 3}}}}), ConfigError);
    CHECK_THROWS_AS(merge_config(nlohmann::json{{"train", {{"lr", 3}}}}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"data.std_lo=5", "data.std_hi=1"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"model.topology=star"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"analysis.kernel=sigmoid"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"analysis.test_fraction=1.5"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"train.ensemble=0"}), ConfigError);
    CHECK_THROWS_AS(load_config("", {"model.n=abc"}), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json", {}), ConfigError);
}

TEST_CASE("config hash ignores the output directory only", "[cli]") {
    const auto a = load_config("", {"output_dir=a"});
    const auto b = load_config("", {"output_dir=b"});
    const auto c = load_config("", {"seed=2"});
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("gen-data balances skew_both and reruns byte-identically", "[cli]") {
    const auto dir = scratch("gen");
    const auto c = load_config("", {"model.n=7", "data.kind=skew_both", "data.size=1600",
                                    "output_dir=" + dir.string()});
    const auto path = cmd_gen_data(c, DataSplit::Train);
    const auto first = table::read_text(path);
    const auto t = table::from_string(first);
    CHECK(t.meta.at("config_hash") == config_hash(c));
    const auto items = data::items_from_table(t);
    REQUIRE(items.size() == 1600);
    std::size_t smooth = 0;
    for (const auto &it : items) {
        smooth += it.label == data::StateClass::Smooth ? 1 : 0;
    }
    CHECK(smooth == 800);
    (void)cmd_gen_data(c, DataSplit::Train);
    CHECK(table::read_text(path) == first);
}

TEST_CASE("train, encode and analyze are deterministic", "[cli]") {
    const auto a = scratch("pipe_a");
    const auto b = scratch("pipe_b");
    for (const auto &dir : {a, b}) {
        const auto c = load_config("", tiny(dir));
        (void)cmd_gen_data(c, DataSplit::Test);
        const auto summary = cmd_train(c);
        CHECK(summary["iterations"] == 15);
        (void)cmd_encode(c, dir.string() + "/seed_1/checkpoint.json",
                         dir.string() + "/test_manifest.tsv");
        const auto m = cmd_analyze(c, dir.string() + "/latent.tsv");
        CHECK(m["rows"] == 40);
        CHECK(m["classification"]["test_size"] == 12);
    }
    CHECK(snapshot(a) == snapshot(b));
    const auto latent = table::read_file(a.string() + "/latent.tsv");
    CHECK(latent.rows.size() == 40);
    const auto pcs = table::read_file(a.string() + "/analysis/pca_coordinates.tsv");
    CHECK(pcs.rows.size() == 40);
}

TEST_CASE("stopped and resumed training matches an uninterrupted run", "[cli]") {
    const auto a = scratch("resume_a");
    const auto b = scratch("resume_b");
    (void)cmd_train(load_config("", tiny(a)));
    const auto cb = load_config("", tiny(b));
    TrainOptions stop;
    stop.stop_at = 6;
    CHECK(cmd_train(cb, stop)["iterations"] == 6);
    TrainOptions resume;
    resume.resume = true;
    (void)cmd_train(cb, resume);
    CHECK(snapshot(a) == snapshot(b));

    const auto other = load_config("", [&] {
        auto o = tiny(b);
        o.push_back("seed=9");
        return o;
    }());
    CHECK_THROWS_AS(cmd_train(other, resume), ConfigError);
}

TEST_CASE("checkpoints written by train load back", "[cli]") {
    const auto dir = scratch("ckpt");
    const auto c = load_config("", tiny(dir));
    (void)cmd_train(c);
    nlohmann::json meta;
    const auto state = optim::checkpoint_from_json(
        nlohmann::json::parse(table::read_text(dir.string() + "/seed_0/checkpoint.json")), &meta);
    CHECK(state.iteration == 15);
    CHECK(meta["config_hash"] == config_hash(c));
    CHECK(state.model.v() == 4);
}

TEST_CASE("encode rejects a model and manifest mismatch", "[cli]") {
    const auto dir = scratch("mismatch");
    const auto c = load_config("", tiny(dir));
    (void)cmd_train(c);
    const auto other = load_config("", {"model.n=4", "eval.test_size=5",
                                        "output_dir=" + dir.string() + "/n4"});
    const auto manifest = cmd_gen_data(other, DataSplit::Test);
    CHECK_THROWS_AS(cmd_encode(c, dir.string() + "/seed_0/checkpoint.json", manifest), ConfigError);
}

TEST_CASE("budget reports the sample accounting", "[cli]") {
    const auto c = load_config("", {"model.n=7", "model.v=12"});
    const auto j = cmd_budget(c, {});
    CHECK(j["encoder_params"] == 48);
    CHECK(j["decoder_params"] == 28);
    CHECK(j["samples_per_iteration"] == 780000);
    BudgetOptions o;
    o.encoder_params = 10;
    o.decoder_params = 5;
    o.eps_latent = 0.1;
    o.eps_fidelity = 0.1;
    CHECK_THAT(cmd_budget(c, o)["samples_per_iteration"].get<double>(),
               Catch::Matchers::WithinRel(1700.0, 1e-12));
}

TEST_CASE("error records carry a type and message", "[cli]") {
    const ConfigError ce("bad key");
    const auto j = error_record(ce);
    CHECK(j["error"]["type"] == "config_error");
    CHECK(j["error"]["message"] == "bad key");
    CHECK(exit_code_for(ce) == 2);
    CHECK(exit_code_for(FormatError("x")) == 3);
    CHECK(exit_code_for(TrainingAborted("nan", 4)) == 4);
    CHECK(error_record(TrainingAborted("nan", 4))["error"]["iteration"] == 4);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("figure ids are listed and unknown ids rejected", "[cli]") {
    CHECK(figure_ids().size() == 6);
    CHECK_THROWS_AS(reproduce_figure("fig9", load_config("", {})), ConfigError);
}

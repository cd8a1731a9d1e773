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
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqa/analysis/latent_set.hpp"
#include "hqa/cli/config.hpp"
#include "hqa/common/table.hpp"
#include "hqa/optim/train.hpp"

/// Figure and table reproductions shared by the command line and the acceptance runner.
namespace hqa::cli {

/// Seed stream tags.
enum class SeedTag : std::uint64_t {
    TrainingSet = 1,
    TestSet = 2,
    EvaluationSet = 3,
    Split = 4,
    Cluster = 5,
    Model = 6,
};

[[nodiscard]] std::uint64_t tagged_seed(const ExperimentConfig &config, SeedTag tag,
                                        std::uint64_t extra = 0);

/// Named output tables plus a metrics document.
struct FigureResult {
    std::string id;
    std::vector<std::pair<std::string, table::Table>> tables;
    nlohmann::json metrics;
};

/// Writes <dir>/<name>.tsv for each table and <dir>/metrics.json.
void write_figure(const FigureResult &result, const std::string &dir);

/// Adds config_hash, experiment and seed to the table metadata.
void stamp(table::Table &t, const ExperimentConfig &config);

[[nodiscard]] std::string json_text(const nlohmann::json &j);

/// Gaussian test states over the widened ranges of the config's dataset.
[[nodiscard]] std::vector<data::DatasetItem> gaussian_test_items(const ExperimentConfig &config,
                                                                 std::size_t count);
/// Balanced skew_both evaluation states.
[[nodiscard]] std::vector<data::DatasetItem> skew_evaluation_items(const ExperimentConfig &config,
                                                                   std::size_t count);

[[nodiscard]] double mean_loss(const model::HqaModel &model,
                               const std::vector<data::DatasetItem> &items);

/// Training loss and test loss against latent size; pins n = 5 and the Gaussian grid.
[[nodiscard]] FigureResult figure_loss_vs_latent(const ExperimentConfig &base,
                                                 const std::vector<std::size_t> &latent_dims);

/// Latent coordinates of the training grid, n = 5 and v = 12.
[[nodiscard]] FigureResult figure_latent_grid(const ExperimentConfig &base);

/// mu-only and sigma-only training, top principal components of 200 test states.
[[nodiscard]] FigureResult figure_latent_order(const ExperimentConfig &base,
                                               std::size_t test_count = 200);

/// The two skewed-Gaussian HQAs (n = 7, v = 12) and their latent evaluation set.
struct SkewModels {
    ExperimentConfig config;
    model::HqaModel smooth_only;
    model::HqaModel both;
    optim::LossHistory smooth_only_history;
    optim::LossHistory both_history;
    std::vector<data::DatasetItem> items;
    analysis::LabeledLatentSet smooth_only_latent;
    analysis::LabeledLatentSet both_latent;
};

[[nodiscard]] ExperimentConfig skew_config(const ExperimentConfig &base);
[[nodiscard]] SkewModels train_skew_models(const ExperimentConfig &base,
                                           std::size_t evaluation_count = 1600);
/// Reuses checkpoints under dir when they match the config; trains and saves otherwise.
[[nodiscard]] SkewModels load_or_train_skew_models(const ExperimentConfig &base,
                                                   const std::string &dir,
                                                   std::size_t evaluation_count = 1600);

/// GMM clustering on all components and on the minor(4) slice.
[[nodiscard]] FigureResult figure_clustering(const SkewModels &models);
/// Decision values of SVM and logistic regression over the plane of the two minor components.
[[nodiscard]] FigureResult figure_decision_boundaries(const SkewModels &models,
                                                      std::size_t grid = 41);
/// Held-out accuracies: model x training type x kernel x latent space.
[[nodiscard]] FigureResult table_classification(const SkewModels &models);

/// Ids accepted by reproduce-figure.
[[nodiscard]] const std::vector<std::string> &figure_ids();
/// Runs one id, writing into <output_dir>/<id>.
FigureResult reproduce_figure(const std::string &id, const ExperimentConfig &config);

} // namespace hqa::cli

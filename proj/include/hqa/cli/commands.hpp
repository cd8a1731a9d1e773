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

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hqa/cli/config.hpp"

/// Subcommand bodies. Each is a pure function of (config, input files).
namespace hqa::cli {

enum class DataSplit { Train, Test };

/// Writes the dataset manifest. Train: data.size states from the training
/// ranges; test: eval.test_size states (widened ranges, or balanced classes for
/// skewed kinds). Returns the path written.
std::string cmd_gen_data(const ExperimentConfig &config, DataSplit split,
                         const std::string &out_path = "");

struct TrainOptions {
    bool resume = false;
    std::optional<std::uint64_t> stop_at; ///< stop every member at this iteration
};

/// Trains train.ensemble members into <output_dir>/seed_<i>/ and writes the averaged
/// binned history to <output_dir>/loss.tsv. Returns a summary document.
nlohmann::json cmd_train(const ExperimentConfig &config, const TrainOptions &options = {});

/// Latent table for every manifest row. Returns the path written.
std::string cmd_encode(const ExperimentConfig &config, const std::string &checkpoint_path,
                       const std::string &manifest_path, const std::string &out_path = "");

/// PCA, clustering and (for labeled rows) classification of a latent table.
/// Writes tables and metrics.json into out_dir (default <output_dir>/analysis).
nlohmann::json cmd_analyze(const ExperimentConfig &config, const std::string &latent_path,
                           const std::string &out_dir = "");

struct BudgetOptions {
    std::optional<std::size_t> encoder_params;
    std::optional<std::size_t> decoder_params;
    double eps_latent = 0.01;
    double eps_fidelity = 0.01;
};

/// Circuit-sample accounting per iteration and per training run.
[[nodiscard]] nlohmann::json cmd_budget(const ExperimentConfig &config,
                                        const BudgetOptions &options);

/// {"error": {"type", "message"}} for an exception escaping a command.
[[nodiscard]] nlohmann::json error_record(const std::exception &e);
/// Process exit status for an exception.
[[nodiscard]] int exit_code_for(const std::exception &e);

} // namespace hqa::cli

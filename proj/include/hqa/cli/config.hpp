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

#include "hqa/analysis/classify.hpp"
#include "hqa/analysis/pca.hpp"
#include "hqa/data/dataset.hpp"
#include "hqa/model/hqa.hpp"
#include "hqa/optim/train.hpp"

/// Experiment configuration: one JSON document, optionally patched by key=value overrides.
namespace hqa::cli {

struct AnalysisConfig {
    analysis::ComponentSlice slice = analysis::ComponentSlice::minor(4);
    std::string clusterer = "gmm";  ///< gmm | kmeans
    std::size_t clusters = 2;
    std::string classifier = "svm"; ///< svm | logreg
    analysis::Kernel kernel = analysis::Kernel::rbf(20.0);
    double c = 1.0;
    double l2 = 1e-4;
    double test_fraction = 0.3;
    std::size_t pca_dims = 4;       ///< size of the PCA reduction
};

struct ExperimentConfig {
    std::string experiment = "custom";
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    model::HqaShape shape;
    optim::TrainingSource source;
    optim::TrainConfig train;
    std::size_t ensemble = 1;
    std::size_t test_size = 1000;
    AnalysisConfig analysis;

    /// Throws ConfigError on invalid ranges or shapes.
    void validate() const;
};

/// Every recognised key with its default value.
[[nodiscard]] nlohmann::json default_config_json();

/// Defaults patched by `user` (unknown keys are rejected).
[[nodiscard]] nlohmann::json merge_config(const nlohmann::json &user);

/// Applies "a.b.c=value" to j. The value is parsed as JSON when possible, else kept as a string.
void apply_override(nlohmann::json &j, const std::string &assignment);

[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json &resolved);
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig &config);

/// Reads `path` (empty for defaults only), merges, applies overrides, validates.
[[nodiscard]] ExperimentConfig load_config(const std::string &path,
                                           const std::vector<std::string> &overrides);

/// FNV-1a of the canonical JSON text of the resolved configuration, output_dir excluded.
[[nodiscard]] std::string config_hash(const ExperimentConfig &config);

[[nodiscard]] std::string slice_name(const analysis::ComponentSlice &slice);

} // namespace hqa::cli

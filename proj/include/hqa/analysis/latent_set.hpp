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
#include <optional>
#include <vector>

#include "hqa/common/linalg.hpp"
#include "hqa/common/rng.hpp"
#include "hqa/common/table.hpp"
#include "hqa/data/dataset.hpp"
#include "hqa/model/hqa.hpp"

namespace hqa::analysis {

/// Latent vectors with the dataset record that produced each row.
struct LabeledLatentSet {
    Matrix x;                                ///< K x v
    std::vector<std::optional<int>> labels;  ///< 0 smooth, 1 non-smooth; empty for Gaussian rows
    std::vector<data::DatasetItem> specs;

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(x.rows()); }
    /// Throws ConsistencyError when the field lengths disagree.
    void validate() const;
    [[nodiscard]] bool fully_labeled() const;
    /// Labels as plain ints; throws if any row lacks one.
    [[nodiscard]] std::vector<int> label_vector() const;
    [[nodiscard]] LabeledLatentSet subset(const std::vector<std::size_t> &rows) const;
};

/// Encodes every item with the model (exact readout).
[[nodiscard]] LabeledLatentSet encode_items(const model::HqaModel &model,
                                            const std::vector<data::DatasetItem> &items);

/// Manifest columns followed by xi_0 .. xi_{v-1}.
[[nodiscard]] table::Table latent_table(const LabeledLatentSet &set);
[[nodiscard]] LabeledLatentSet latent_set_from_table(const table::Table &t);

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Seeded shuffle, then the first round(test_fraction * K) indices form the test part.
[[nodiscard]] Split train_test_split(std::size_t count, double test_fraction, Rng &rng);

} // namespace hqa::analysis

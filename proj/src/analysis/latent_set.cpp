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

#include "hqa/analysis/latent_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hqa/common/error.hpp"

namespace hqa::analysis {

void LabeledLatentSet::validate() const {
    const auto k = rows();
    if (labels.size() != k || specs.size() != k) {
        throw ConsistencyError("latent set: " + std::to_string(k) + " rows but " +
                               std::to_string(labels.size()) + " labels and " +
                               std::to_string(specs.size()) + " specs");
    }
}

bool LabeledLatentSet::fully_labeled() const {
    return std::all_of(labels.begin(), labels.end(),
                       [](const std::optional<int> &l) { return l.has_value(); });
}

std::vector<int> LabeledLatentSet::label_vector() const {
    std::vector<int> out;
    out.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!labels[i]) {
            throw std::invalid_argument("latent set row " + std::to_string(i) +
                                        " has no class label");
        }
        out.push_back(*labels[i]);
    }
    return out;
}

LabeledLatentSet LabeledLatentSet::subset(const std::vector<std::size_t> &which) const {
    LabeledLatentSet out;
    out.x.resize(static_cast<Eigen::Index>(which.size()), x.cols());
    for (std::size_t k = 0; k < which.size(); ++k) {
        if (which[k] >= rows()) {
            throw std::out_of_range("latent set subset index out of range");
        }
        out.x.row(static_cast<Eigen::Index>(k)) = x.row(static_cast<Eigen::Index>(which[k]));
        out.labels.push_back(labels[which[k]]);
        out.specs.push_back(specs[which[k]]);
    }
    return out;
}

LabeledLatentSet encode_items(const model::HqaModel &model,
                              const std::vector<data::DatasetItem> &items) {
    LabeledLatentSet out;
    out.x.resize(static_cast<Eigen::Index>(items.size()), static_cast<Eigen::Index>(model.v()));
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].num_qubits != model.n()) {
            throw std::invalid_argument("encode: item " + std::to_string(i) + " has " +
                                        std::to_string(items[i].num_qubits) +
                                        " qubits, model expects " + std::to_string(model.n()));
        }
        const auto xi = model::encode(model, items[i].make_state());
        out.x.row(static_cast<Eigen::Index>(i)) = xi.as_vector().transpose();
        if (data::is_skewed(items[i].kind)) {
            out.labels.emplace_back(static_cast<int>(items[i].label));
        } else {
            out.labels.emplace_back(std::nullopt);
        }
        out.specs.push_back(items[i]);
    }
    return out;
}

table::Table latent_table(const LabeledLatentSet &set) {
    set.validate();
    auto t = data::manifest_table(set.specs);
    t.meta["format"] = "hqa-latent-v1";
    const auto v = static_cast<std::size_t>(set.x.cols());
    t.meta["v"] = std::to_string(v);
    for (std::size_t j = 0; j < v; ++j) {
        t.columns.push_back("xi_" + std::to_string(j));
    }
    for (std::size_t i = 0; i < set.rows(); ++i) {
        for (std::size_t j = 0; j < v; ++j) {
            t.rows[i].push_back(table::format_double(
                set.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
    }
    return t;
}

LabeledLatentSet latent_set_from_table(const table::Table &t) {
    LabeledLatentSet out;
    out.specs = data::items_from_table(t);
    std::vector<std::size_t> cols;
    while (t.has_column("xi_" + std::to_string(cols.size()))) {
        cols.push_back(t.column("xi_" + std::to_string(cols.size())));
    }
    if (cols.empty()) {
        throw FormatError("latent table has no xi_0 column");
    }
    out.x.resize(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                table::parse_double(t.rows[i].at(cols[j]));
        }
        if (data::is_skewed(out.specs[i].kind)) {
            out.labels.emplace_back(static_cast<int>(out.specs[i].label));
        } else {
            out.labels.emplace_back(std::nullopt);
        }
    }
    return out;
}

Split train_test_split(std::size_t count, double test_fraction, Rng &rng) {
    if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
        throw std::invalid_argument("test fraction must lie in [0, 1]");
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = count; i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(order[i - 1], order[pick(rng)]);
    }
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(count)));
    Split s;
    s.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    return s;
}

} // namespace hqa::analysis

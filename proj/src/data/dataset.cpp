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

#include "hqa/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hqa/common/error.hpp"

namespace hqa::data {

namespace {

std::size_t grid_size(std::size_t n) {
    if (n < 1 || n > sim::kMaxQubits) {
        throw std::invalid_argument("dataset num_qubits out of range");
    }
    return std::size_t{1} << n;
}

/// log N(i - ceil(N/2); mean, std) up to a constant shared by all i.
std::vector<double> gaussian_log_profile(std::size_t n, double mean, double std) {
    if (!(std > 0.0) || !std::isfinite(std)) {
        throw std::invalid_argument("Gaussian std must be > 0, got " + std::to_string(std));
    }
    const std::size_t dim = grid_size(n);
    const auto offset = static_cast<double>((dim + 1) / 2); // ceil(N/2)
    std::vector<double> logs(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double z = (static_cast<double>(i) - offset - mean) / std;
        logs[i] = -0.5 * z * z;
    }
    return logs;
}

/// exp(log - max over entries with non-zero weight) * weight.
std::vector<double> stabilized(const std::vector<double> &logs,
                               const std::vector<double> &weights) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < logs.size(); ++i) {
        if (weights[i] > 0.0) {
            top = std::max(top, logs[i]);
        }
    }
    if (!std::isfinite(top)) {
        throw std::invalid_argument("every amplitude is zero after clamping");
    }
    std::vector<double> out(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        out[i] = weights[i] > 0.0 ? std::exp(logs[i] - top) * weights[i] : 0.0;
    }
    return out;
}

} // namespace

double default_slope(std::size_t num_qubits) {
    return 1.0 / static_cast<double>(grid_size(num_qubits));
}

sim::StateVector gaussian_amplitudes(const GaussianStateSpec &spec) {
    const auto logs = gaussian_log_profile(spec.num_qubits, spec.mean, spec.std);
    const std::vector<double> ones(logs.size(), 1.0);
    return sim::StateVector::normalized(stabilized(logs, ones));
}

sim::StateVector skewed_amplitudes(const SkewedStateSpec &spec, Rng &rng) {
    const auto logs = gaussian_log_profile(spec.num_qubits, spec.mean, spec.std);
    std::vector<double> weights(logs.size());
    std::uniform_real_distribution<double> eta(0.0, 1.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double line = std::max(0.0, spec.slope * static_cast<double>(i) + spec.intercept);
        const double noise = spec.label == StateClass::NonSmooth ? eta(rng) : 1.0;
        weights[i] = line * noise;
    }
    return sim::StateVector::normalized(stabilized(logs, weights));
}

std::string to_string(DatasetKind kind) {
    switch (kind) {
    case DatasetKind::GaussianGrid:
        return "gaussian_grid";
    case DatasetKind::GaussianMuOnly:
        return "gaussian_mu_only";
    case DatasetKind::GaussianSigmaOnly:
        return "gaussian_sigma_only";
    case DatasetKind::SkewSmoothOnly:
        return "skew_smooth_only";
    case DatasetKind::SkewBoth:
        return "skew_both";
    }
    return "?";
}

DatasetKind dataset_kind_from_string(const std::string &name) {
    for (auto k : {DatasetKind::GaussianGrid, DatasetKind::GaussianMuOnly,
                   DatasetKind::GaussianSigmaOnly, DatasetKind::SkewSmoothOnly,
                   DatasetKind::SkewBoth}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw ConfigError("unknown dataset kind '" + name + "'");
}

std::string to_string(StateClass c) {
    return c == StateClass::Smooth ? "smooth" : "non_smooth";
}

StateClass state_class_from_string(const std::string &name) {
    if (name == "smooth") {
        return StateClass::Smooth;
    }
    if (name == "non_smooth") {
        return StateClass::NonSmooth;
    }
    throw FormatError("unknown state class '" + name + "'");
}

double DatasetConfig::mean_min() const {
    return mean_lo.value_or(-static_cast<double>(grid_size(num_qubits)) / 2.0);
}
double DatasetConfig::mean_max() const {
    return mean_hi.value_or(static_cast<double>(grid_size(num_qubits)) / 2.0);
}
double DatasetConfig::std_min() const { return std_lo.value_or(0.0); }
double DatasetConfig::std_max() const {
    return std_hi.value_or(static_cast<double>(grid_size(num_qubits)) / 3.0);
}
double DatasetConfig::skew_slope() const { return slope.value_or(default_slope(num_qubits)); }

void DatasetConfig::validate() const {
    if (num_qubits < 1 || num_qubits > sim::kMaxQubits) {
        throw ConfigError("dataset num_qubits out of range");
    }
    if (!(mean_min() <= mean_max())) {
        throw ConfigError("dataset mean range is inverted");
    }
    if (!(std_min() >= 0.0) || !(std_min() <= std_max()) || !(std_max() > 0.0)) {
        throw ConfigError("dataset std range must satisfy 0 <= lo <= hi, hi > 0");
    }
    if (kind == DatasetKind::GaussianMuOnly && !(fixed_std > 0.0)) {
        throw ConfigError("fixed std must be > 0");
    }
}

DatasetConfig DatasetConfig::with_test_ranges() const {
    DatasetConfig out = *this;
    out.std_lo = 0.0;
    out.std_hi = static_cast<double>(grid_size(num_qubits)) / 2.0;
    return out;
}

sim::StateVector DatasetItem::make_state() const {
    if (is_skewed(kind)) {
        Rng rng(seed);
        return skewed_amplitudes({num_qubits, mean, std, slope, intercept, label}, rng);
    }
    return gaussian_amplitudes({num_qubits, mean, std});
}

DatasetItem sample_item(const DatasetConfig &config, Rng &rng,
                        std::optional<StateClass> label) {
    DatasetItem item;
    item.kind = config.kind;
    item.num_qubits = config.num_qubits;
    const double mean = uniform(rng, config.mean_min(), config.mean_max());
    const double std = std::max(kSigmaFloor, uniform(rng, config.std_min(), config.std_max()));
    switch (config.kind) {
    case DatasetKind::GaussianGrid:
        item.mean = mean;
        item.std = std;
        break;
    case DatasetKind::GaussianMuOnly:
        item.mean = mean;
        item.std = config.fixed_std;
        break;
    case DatasetKind::GaussianSigmaOnly:
        item.mean = config.fixed_mean;
        item.std = std;
        break;
    case DatasetKind::SkewSmoothOnly:
    case DatasetKind::SkewBoth:
        item.mean = mean;
        item.std = std;
        item.slope = config.skew_slope();
        item.intercept = config.intercept;
        if (config.kind == DatasetKind::SkewSmoothOnly) {
            item.label = StateClass::Smooth;
        } else if (label) {
            item.label = *label;
        } else {
            item.label = uniform(rng, 0.0, 1.0) < 0.5 ? StateClass::Smooth
                                                       : StateClass::NonSmooth;
        }
        break;
    }
    if (!is_skewed(config.kind)) {
        item.slope = 0.0;
        item.intercept = 1.0;
    }
    item.seed = rng();
    return item;
}

std::vector<DatasetItem> build_training_set(const DatasetConfig &config, std::size_t size,
                                            Rng &rng) {
    config.validate();
    if (size < 1) {
        throw ConfigError("training set size must be >= 1");
    }
    std::vector<DatasetItem> items;
    items.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::optional<StateClass> label;
        if (config.kind == DatasetKind::SkewBoth) {
            label = i % 2 == 0 ? StateClass::Smooth : StateClass::NonSmooth;
        }
        items.push_back(sample_item(config, rng, label));
    }
    return items;
}

table::Table manifest_table(const std::vector<DatasetItem> &items) {
    table::Table t;
    t.meta["format"] = "hqa-manifest-v1";
    t.columns = {"index", "kind", "n", "mu", "sigma", "a", "b", "class", "seed"};
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto &it = items[i];
        t.rows.push_back({std::to_string(i), to_string(it.kind), std::to_string(it.num_qubits),
                          table::format_double(it.mean), table::format_double(it.std),
                          table::format_double(it.slope), table::format_double(it.intercept),
                          to_string(it.label), std::to_string(it.seed)});
    }
    return t;
}

std::vector<DatasetItem> items_from_table(const table::Table &t) {
    const auto c_kind = t.column("kind");
    const auto c_n = t.column("n");
    const auto c_mu = t.column("mu");
    const auto c_sigma = t.column("sigma");
    const auto c_a = t.column("a");
    const auto c_b = t.column("b");
    const auto c_class = t.column("class");
    const auto c_seed = t.column("seed");
    std::vector<DatasetItem> items;
    items.reserve(t.rows.size());
    for (const auto &row : t.rows) {
        DatasetItem it;
        try {
            it.kind = dataset_kind_from_string(row[c_kind]);
        } catch (const ConfigError &e) {
            throw FormatError(e.what());
        }
        it.num_qubits = table::parse_u64(row[c_n]);
        it.mean = table::parse_double(row[c_mu]);
        it.std = table::parse_double(row[c_sigma]);
        it.slope = table::parse_double(row[c_a]);
        it.intercept = table::parse_double(row[c_b]);
        it.label = state_class_from_string(row[c_class]);
        it.seed = table::parse_u64(row[c_seed]);
        items.push_back(it);
    }
    return items;
}

} // namespace hqa::data

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
#include <optional>
#include <string>
#include <vector>

#include "hqa/common/rng.hpp"
#include "hqa/common/table.hpp"
#include "hqa/sim/state_vector.hpp"

/// Amplitude-encoded Gaussian and skewed-Gaussian state families.
namespace hqa::data {

/// Smallest standard deviation (grid units) a generator will produce.
inline constexpr double kSigmaFloor = 1e-6;

struct GaussianStateSpec {
    std::size_t num_qubits = 1;
    double mean = 0.0; ///< grid units
    double std = 1.0;  ///< grid units, > 0
};

enum class StateClass { Smooth = 0, NonSmooth = 1 };

struct SkewedStateSpec {
    std::size_t num_qubits = 1;
    double mean = 0.0;
    double std = 1.0;
    double slope = 0.0;     ///< a in max{0, a*i + b}
    double intercept = 1.0; ///< b
    StateClass label = StateClass::Smooth;
};

/// Default skew: a = 1/N, b = 1/2.
[[nodiscard]] double default_slope(std::size_t num_qubits);
inline constexpr double kDefaultIntercept = 0.5;

/// Amplitude i proportional to N(i - ceil(N/2); mean, std), normalized.
[[nodiscard]] sim::StateVector gaussian_amplitudes(const GaussianStateSpec &spec);

/// Amplitude i proportional to N_i * max{0, a*i + b} * eta_i with eta_i = 1 for
/// smooth states and i.i.d. Uniform[0,1] per amplitude for non-smooth states.
[[nodiscard]] sim::StateVector skewed_amplitudes(const SkewedStateSpec &spec, Rng &rng);

enum class DatasetKind {
    GaussianGrid,
    GaussianMuOnly,
    GaussianSigmaOnly,
    SkewSmoothOnly,
    SkewBoth,
};

[[nodiscard]] std::string to_string(DatasetKind kind);
[[nodiscard]] DatasetKind dataset_kind_from_string(const std::string &name);
[[nodiscard]] std::string to_string(StateClass c);
[[nodiscard]] StateClass state_class_from_string(const std::string &name);

[[nodiscard]] inline bool is_skewed(DatasetKind k) noexcept {
    return k == DatasetKind::SkewSmoothOnly || k == DatasetKind::SkewBoth;
}

/// Sampling ranges. Unset bounds default from N = 2^n: mean in [-N/2, N/2],
/// std in (0, N/3]; fixed_* pins the corresponding parameter.
struct DatasetConfig {
    DatasetKind kind = DatasetKind::GaussianGrid;
    std::size_t num_qubits = 5;
    std::optional<double> mean_lo, mean_hi;
    std::optional<double> std_lo, std_hi;
    double fixed_mean = 0.0; ///< used by gaussian_sigma_only
    double fixed_std = 3.0;  ///< used by gaussian_mu_only
    std::optional<double> slope;
    double intercept = kDefaultIntercept;

    [[nodiscard]] double mean_min() const;
    [[nodiscard]] double mean_max() const;
    [[nodiscard]] double std_min() const;
    [[nodiscard]] double std_max() const;
    [[nodiscard]] double skew_slope() const;
    /// Throws ConfigError on empty or inverted ranges.
    void validate() const;
    /// Same config with the wider test range on std: [0, N/2].
    [[nodiscard]] DatasetConfig with_test_ranges() const;
};

/// One manifest record. Regenerates its state bit-exactly via make_state.
struct DatasetItem {
    DatasetKind kind = DatasetKind::GaussianGrid;
    std::size_t num_qubits = 1;
    double mean = 0.0;
    double std = 1.0;
    double slope = 0.0;
    double intercept = 1.0;
    StateClass label = StateClass::Smooth;
    std::uint64_t seed = 0; ///< drives the non-smooth eta draws

    [[nodiscard]] sim::StateVector make_state() const;
};

/// Draws one spec from the config's ranges. `label` forces the class for
/// skew_both; otherwise the class is drawn 50/50.
[[nodiscard]] DatasetItem sample_item(const DatasetConfig &config, Rng &rng,
                                      std::optional<StateClass> label = std::nullopt);

/// K items; skew_both alternates classes so that each holds K/2 (+1 for odd K).
[[nodiscard]] std::vector<DatasetItem> build_training_set(const DatasetConfig &config,
                                                          std::size_t size, Rng &rng);

[[nodiscard]] table::Table manifest_table(const std::vector<DatasetItem> &items);
[[nodiscard]] std::vector<DatasetItem> items_from_table(const table::Table &t);

} // namespace hqa::data

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
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqa/ansatz/ansatz.hpp"
#include "hqa/common/linalg.hpp"
#include "hqa/common/rng.hpp"
#include "hqa/model/ann.hpp"
#include "hqa/sim/state_vector.hpp"

/// The hybrid autoencoder: PQC encoder -> latent vector -> ANN -> PQC decoder.
namespace hqa::model {

/// Per-qubit <Z> of the encoder register, each component in [-1, 1].
struct LatentVector {
    std::vector<double> components;

    [[nodiscard]] std::size_t size() const noexcept { return components.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return components[i]; }
    [[nodiscard]] Vector as_vector() const {
        return Eigen::Map<const Vector>(components.data(),
                                        static_cast<Eigen::Index>(components.size()));
    }
};

struct HqaShape {
    std::size_t input_qubits = 5;   ///< n
    std::size_t latent_dim = 12;    ///< v
    std::size_t encoder_layers = 4; ///< dim(alpha) = 4 max(n, v)
    std::size_t decoder_layers = 4; ///< dim(theta) = 4 n
    ansatz::Topology topology = ansatz::Topology::Chain;

    void validate() const;
    [[nodiscard]] std::size_t hidden_dim() const noexcept { return 2 * latent_dim; }
    /// Encoder register: the input plus v - n ancillas, or just the input when
    /// v < n (the latent vector then reads the first v qubits).
    [[nodiscard]] std::size_t register_qubits() const noexcept {
        return latent_dim > input_qubits ? latent_dim : input_qubits;
    }
};

/**
 * @brief Encoder parameters, ANN weights and circuit shapes of one HQA.
 *
 * Only alpha and the ANN are trainable. The decoder angles are always the ANN
 * output for the current latent vector.
 */
struct HqaModel {
    HqaShape shape;
    ansatz::AnsatzSpec encoder_spec;
    ansatz::AnsatzSpec decoder_spec;
    ansatz::ParamVector alpha;
    AnnWeights ann;

    /// alpha uniform in [-pi, pi]; ANN uniform in +-1/sqrt(fan_in).
    static HqaModel create(const HqaShape &shape, Rng &rng);
    /// alpha = 0 and all ANN weights zero.
    static HqaModel zeros(const HqaShape &shape);

    [[nodiscard]] std::size_t n() const noexcept { return shape.input_qubits; }
    [[nodiscard]] std::size_t v() const noexcept { return shape.latent_dim; }
    void validate() const;

    friend bool operator==(const HqaModel &a, const HqaModel &b);
};

[[nodiscard]] LatentVector encode(const HqaModel &model, const sim::StateVector &state);
[[nodiscard]] LatentVector encode_sampled(const HqaModel &model, const sim::StateVector &state,
                                          std::size_t shots, Rng &rng);
/// Decoder angles theta = f(xi).
[[nodiscard]] ansatz::ParamVector ann_angles(const HqaModel &model, const LatentVector &xi);
[[nodiscard]] sim::StateVector decode(const HqaModel &model, const LatentVector &xi);
[[nodiscard]] sim::StateVector reconstruct(const HqaModel &model,
                                           const sim::StateVector &state);

/// 1 - mean fidelity(reconstruct(s), s).
[[nodiscard]] double loss_batch(const HqaModel &model, std::span<const sim::StateVector> states);

/// Swap-test estimate 2 p - 1 of |<a|b>|^2 from `shots` ancilla readouts, clipped to [0, 1].
[[nodiscard]] double swap_test_sampled(const sim::StateVector &a, const sim::StateVector &b,
                                       std::size_t shots, Rng &rng);
/// sum_i (|a_i| - |b_i|)^2
[[nodiscard]] double mse_amplitude(const sim::StateVector &a, const sim::StateVector &b);

/// Exact expectations (shots == 0) or shot-sampled latents and swap tests.
struct GradientMode {
    std::size_t encoder_shots = 0;
    std::size_t fidelity_shots = 0;

    static GradientMode exact() { return {}; }
    static GradientMode sampled(std::size_t encoder_shots, std::size_t fidelity_shots) {
        return {encoder_shots, fidelity_shots};
    }
    [[nodiscard]] bool is_exact() const noexcept {
        return encoder_shots == 0 && fidelity_shots == 0;
    }
};

struct SampleCount {
    double budget = 0.0;     ///< (1 + P_E) M_E + (1 + P_D) M_swap, per instance
    std::uint64_t drawn = 0; ///< circuit shots actually drawn across the batch
};

struct FullGradient {
    double loss = 0.0;                ///< batch loss at the current parameters
    std::vector<double> d_alpha;      ///< dL/d alpha
    AnnWeights d_ann;                 ///< dL/d w
    std::vector<Vector> d_theta;      ///< dL/d theta per batch instance
    SampleCount samples;              ///< zero in exact mode
};

/**
 * @brief Gradient of the batch loss with respect to alpha and every ANN weight.
 *
 * dL/dtheta comes from the parameter-shift rule on the decoder fidelity, dL/dw
 * from backpropagating it through the ANN, and dL/dalpha from contracting the
 * ANN input gradient with the parameter-shift Jacobian of the encoder latents.
 */
[[nodiscard]] FullGradient grad_full(const HqaModel &model,
                                     std::span<const sim::StateVector> batch,
                                     GradientMode mode = GradientMode::exact(),
                                     Rng *rng = nullptr);

[[nodiscard]] nlohmann::json model_to_json(const HqaModel &model);
[[nodiscard]] HqaModel model_from_json(const nlohmann::json &j);

} // namespace hqa::model

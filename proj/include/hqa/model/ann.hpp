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
#include <span>
#include <vector>

#include "hqa/common/linalg.hpp"
#include "hqa/common/rng.hpp"

namespace hqa::model {

/**
 * @brief One-hidden-layer feed-forward network: theta = W2 tanh(W1 x + b1) + b2.
 *
 * The hidden activation is tanh and the output layer is linear, so the
 * network can emit unbounded rotation angles.
 */
struct AnnWeights {
    Matrix w1; ///< hidden x input
    Vector b1; ///< hidden
    Matrix w2; ///< output x hidden
    Vector b2; ///< output

    static AnnWeights zeros(std::size_t input, std::size_t hidden, std::size_t output);
    /// Entries uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer.
    static AnnWeights random(std::size_t input, std::size_t hidden, std::size_t output,
                             Rng &rng);

    [[nodiscard]] std::size_t input_dim() const noexcept {
        return static_cast<std::size_t>(w1.cols());
    }
    [[nodiscard]] std::size_t hidden_dim() const noexcept {
        return static_cast<std::size_t>(w1.rows());
    }
    [[nodiscard]] std::size_t output_dim() const noexcept {
        return static_cast<std::size_t>(w2.rows());
    }
    [[nodiscard]] std::size_t parameter_count() const noexcept;

    /// w1 (row-major), b1, w2 (row-major), b2.
    [[nodiscard]] std::vector<double> flatten() const;
    void assign(std::span<const double> flat);

    /// Shapes consistent and every entry finite.
    void validate() const;
};

struct AnnForward {
    Vector hidden; ///< tanh activations
    Vector output;
};

struct AnnGradient {
    AnnWeights weights; ///< dL/d(each weight), same shapes as the network
    Vector input;       ///< dL/dx
};

[[nodiscard]] AnnForward ann_forward_cached(const AnnWeights &ann, const Vector &x);
[[nodiscard]] Vector ann_forward(const AnnWeights &ann, const Vector &x);

/// Backpropagates dL/d(output) through a cached forward pass.
[[nodiscard]] AnnGradient ann_backward(const AnnWeights &ann, const Vector &x,
                                       const AnnForward &forward, const Vector &d_output);

/// d output / d input, (output x input).
[[nodiscard]] Matrix ann_input_jacobian(const AnnWeights &ann, const Vector &x);

} // namespace hqa::model

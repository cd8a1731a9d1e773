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
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "hqa/common/linalg.hpp"
#include "hqa/common/rng.hpp"
#include "hqa/sim/state_vector.hpp"

/// Layered hardware-efficient ansatz and parameter-shift differentiation.
namespace hqa::ansatz {

enum class Topology {
    Chain, ///< CNOT(i, i+1) for i = 0..n-2
    Ring,  ///< Chain plus CNOT(n-1, 0); requires n >= 3
};

/**
 * @brief Shape of a layered RotY / CNOT circuit.
 *
 * Each of the `num_layers` repetitions applies RotY(params[l*n + i]) to every
 * qubit i and then the entangling layer. There is no trailing rotation layer.
 */
struct AnsatzSpec {
    std::size_t num_qubits = 1;
    std::size_t num_layers = 4;
    Topology topology = Topology::Chain;

    [[nodiscard]] std::size_t param_count() const noexcept {
        return num_qubits * num_layers;
    }
    void validate() const;
};

/// Trainable rotation angles (radians) for one AnsatzSpec.
class ParamVector {
  public:
    ParamVector() = default;
    explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}
    explicit ParamVector(std::size_t size, double fill = 0.0) : values_(size, fill) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double &operator[](std::size_t i) { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    /// Copy with entry `index` moved by `delta`.
    [[nodiscard]] ParamVector shifted(std::size_t index, double delta) const;

    friend bool operator==(const ParamVector &, const ParamVector &) = default;

  private:
    std::vector<double> values_;
};

/// exp(-i Y theta) has generator eigenvalues +-1, so r = 1 and s = pi / (4 r).
inline constexpr double kShiftScale = 1.0;
inline constexpr double kShift = std::numbers::pi / 4.0;

[[nodiscard]] std::vector<sim::GateOp> build_gates(const AnsatzSpec &spec,
                                                   const ParamVector &params);

[[nodiscard]] sim::StateVector apply_ansatz(const sim::StateVector &state,
                                            const AnsatzSpec &spec,
                                            const ParamVector &params);

using ScalarEval = std::function<double(const ParamVector &)>;
using VectorEval = std::function<std::vector<double>(const ParamVector &)>;

/// r [f(p + s e_i) - f(p - s e_i)]
[[nodiscard]] double shift_gradient(const ScalarEval &eval, const ParamVector &params,
                                    std::size_t index);

/// Parameter-shift Jacobian, shape (output_dim x params.size()).
[[nodiscard]] Matrix shift_jacobian(const VectorEval &eval, const ParamVector &params);

/// How Z expectations are read out: exact when shots == 0, otherwise each
/// component is a mean of `shots` single-qubit measurements drawn from *rng.
struct Readout {
    std::size_t shots = 0;
    Rng *rng = nullptr;

    [[nodiscard]] bool exact() const noexcept { return shots == 0; }
};

struct ZJacobian {
    std::vector<double> expectations; ///< <Z_q> of the unshifted circuit
    Matrix jacobian;                  ///< d<Z_q>/d param_k, (num_qubits x param_count)
};

/**
 * @brief <Z_q> of every qubit after the ansatz, with its parameter-shift Jacobian.
 *
 * Equivalent to shift_jacobian over the map params -> expectation_z_all(ansatz
 * output), but the forward prefix up to each shifted gate is computed once and
 * shared by both shifts.
 */
[[nodiscard]] ZJacobian z_expectations_with_jacobian(const sim::StateVector &input,
                                                     const AnsatzSpec &spec,
                                                     const ParamVector &params,
                                                     Readout readout = {});

} // namespace hqa::ansatz

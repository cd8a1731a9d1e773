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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hqa/common/rng.hpp"

/// Dense state-vector simulation.
///
/// Qubit 0 is the most significant bit of a basis index, so |q0 q1 ... q(n-1)>
/// is stored at index sum_k q_k 2^(n-1-k). Appending ancillas therefore shifts
/// the original index left.
namespace hqa::sim {

using Amplitude = std::complex<double>;

/// Maximum |<psi|psi> - 1| tolerated before an operation throws.
inline constexpr double kNormTolerance = 1e-8;
inline constexpr std::size_t kMaxQubits = 20;

/**
 * @brief Immutable pure state over a fixed number of qubits.
 *
 * All operations below return new states; the amplitudes of an existing
 * StateVector never change after construction.
 */
class StateVector {
  public:
    /// Wraps amplitudes that are already normalized (checked to kNormTolerance).
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);
    /// Rescales an arbitrary non-zero vector to unit norm.
    static StateVector normalized(std::vector<Amplitude> amplitudes);
    static StateVector normalized(std::span<const double> real_amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const Amplitude &operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] double norm_squared() const noexcept;

  private:
    StateVector(std::size_t num_qubits, std::vector<Amplitude> amps);

    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

enum class GateKind { RotY, Entangler };

/// RotY(angle) on `target`, or CNOT(control -> target) when kind == Entangler.
struct GateOp {
    GateKind kind;
    std::size_t target;
    std::optional<std::size_t> control;
    double angle = 0.0;

    static GateOp roty(std::size_t target, double angle) {
        return {GateKind::RotY, target, std::nullopt, angle};
    }
    static GateOp cnot(std::size_t control, std::size_t target) {
        return {GateKind::Entangler, target, control, 0.0};
    }
};

[[nodiscard]] StateVector zero_state(std::size_t num_qubits);
[[nodiscard]] StateVector basis_state(std::size_t num_qubits, std::size_t index);

/// exp(-i Y theta): [[cos t, -sin t], [sin t, cos t]] (no half angle).
[[nodiscard]] StateVector apply_roty(const StateVector &state, std::size_t qubit,
                                     double theta);
/// CNOT with the given control and target.
[[nodiscard]] StateVector apply_entangler(const StateVector &state, std::size_t control,
                                          std::size_t target);
[[nodiscard]] StateVector apply_gate(const StateVector &state, const GateOp &op);
/// Applies a gate sequence, checking the norm once at the end.
[[nodiscard]] StateVector apply_gates(const StateVector &state,
                                      std::span<const GateOp> ops);

[[nodiscard]] double expectation_z(const StateVector &state, std::size_t qubit);
/// <Z_q> for every qubit q in one pass over the probabilities.
[[nodiscard]] std::vector<double> expectation_z_all(const StateVector &state);

/// Mean of `shots` +-1 outcomes of measuring Z on `qubit`.
[[nodiscard]] double sample_z(const StateVector &state, std::size_t qubit,
                              std::size_t shots, Rng &rng);
/// Mean of `shots` +-1 draws with Pr(+1) = (1 + expectation) / 2.
[[nodiscard]] double sample_pm1_mean(double expectation, std::size_t shots, Rng &rng);

/// <a|b>
[[nodiscard]] Amplitude inner_product(const StateVector &a, const StateVector &b);
/// |<a|b>|^2
[[nodiscard]] double fidelity(const StateVector &a, const StateVector &b);

/// state (x) |0>^k, ancillas appended after the existing qubits.
[[nodiscard]] StateVector tensor_with_zero_ancillas(const StateVector &state,
                                                    std::size_t k);

/// Global phase e^{i phi} applied to every amplitude.
[[nodiscard]] StateVector with_global_phase(const StateVector &state, double phi);

/// In-place kernels over raw amplitude buffers. No norm checks.
namespace kernels {
void roty(std::span<Amplitude> amps, std::size_t num_qubits, std::size_t qubit,
          double theta);
void cnot(std::span<Amplitude> amps, std::size_t num_qubits, std::size_t control,
          std::size_t target);
void apply(std::span<Amplitude> amps, std::size_t num_qubits, const GateOp &op);
/// Writes <Z_q> for all q into `out` (size num_qubits).
void expectation_z_all(std::span<const Amplitude> amps, std::size_t num_qubits,
                       std::span<double> out);

/// Real-amplitude variants. RotY and CNOT keep real states real.
void roty(std::span<double> amps, std::size_t num_qubits, std::size_t qubit, double theta);
void cnot(std::span<double> amps, std::size_t num_qubits, std::size_t control,
          std::size_t target);
void apply(std::span<double> amps, std::size_t num_qubits, const GateOp &op);
void expectation_z_all(std::span<const double> amps, std::size_t num_qubits,
                       std::span<double> out);
} // namespace kernels

} // namespace hqa::sim

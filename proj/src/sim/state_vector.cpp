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

#include "hqa/sim/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hqa/common/error.hpp"

namespace hqa::sim {

namespace {

std::size_t qubits_for_dimension(std::size_t dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2, got " +
                                    std::to_string(dim));
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("state exceeds " + std::to_string(kMaxQubits) +
                                    " qubits");
    }
    return n;
}

double sum_norm(std::span<const Amplitude> amps) {
    double acc = 0.0;
    for (const auto &a : amps) {
        acc += std::norm(a);
    }
    return acc;
}

void check_norm(std::span<const Amplitude> amps, const char *where) {
    const double n2 = sum_norm(amps);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
        throw ConsistencyError(std::string(where) + ": norm drifted to " +
                               std::to_string(n2));
    }
}

void check_qubit(const StateVector &s, std::size_t q, const char *where) {
    if (q >= s.num_qubits()) {
        throw std::out_of_range(std::string(where) + ": qubit " + std::to_string(q) +
                                " out of range for " + std::to_string(s.num_qubits()) +
                                "-qubit state");
    }
}

void check_op(const StateVector &s, const GateOp &op) {
    check_qubit(s, op.target, "apply_gate");
    if (op.kind == GateKind::Entangler) {
        if (!op.control) {
            throw std::invalid_argument("entangler requires a control qubit");
        }
        check_qubit(s, *op.control, "apply_gate");
        if (*op.control == op.target) {
            throw std::invalid_argument("entangler control and target must differ");
        }
    }
}

std::vector<Amplitude> copy_amps(const StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

} // namespace

StateVector::StateVector(std::size_t num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t n = qubits_for_dimension(amplitudes.size());
    check_norm(amplitudes, "StateVector::from_amplitudes");
    return {n, std::move(amplitudes)};
}

StateVector StateVector::normalized(std::vector<Amplitude> amplitudes) {
    const std::size_t n = qubits_for_dimension(amplitudes.size());
    const double n2 = sum_norm(amplitudes);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : amplitudes) {
        a *= scale;
    }
    return {n, std::move(amplitudes)};
}

StateVector StateVector::normalized(std::span<const double> real_amplitudes) {
    return normalized(std::vector<Amplitude>(real_amplitudes.begin(), real_amplitudes.end()));
}

double StateVector::norm_squared() const noexcept { return sum_norm(amps_); }

StateVector zero_state(std::size_t num_qubits) { return basis_state(num_qubits, 0); }

StateVector basis_state(std::size_t num_qubits, std::size_t index) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("num_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    std::vector<Amplitude> amps(dim, Amplitude{0.0, 0.0});
    amps[index] = 1.0;
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector apply_roty(const StateVector &state, std::size_t qubit, double theta) {
    return apply_gate(state, GateOp::roty(qubit, theta));
}

StateVector apply_entangler(const StateVector &state, std::size_t control,
                            std::size_t target) {
    return apply_gate(state, GateOp::cnot(control, target));
}

StateVector apply_gate(const StateVector &state, const GateOp &op) {
    return apply_gates(state, std::span<const GateOp>(&op, 1));
}

StateVector apply_gates(const StateVector &state, std::span<const GateOp> ops) {
    for (const auto &op : ops) {
        check_op(state, op);
    }
    auto amps = copy_amps(state);
    for (const auto &op : ops) {
        kernels::apply(amps, state.num_qubits(), op);
    }
    check_norm(amps, "apply_gates");
    return StateVector::from_amplitudes(std::move(amps));
}

double expectation_z(const StateVector &state, std::size_t qubit) {
    check_qubit(state, qubit, "expectation_z");
    const std::size_t mask = std::size_t{1} << (state.num_qubits() - 1 - qubit);
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & mask) ? -p : p;
    }
    return std::clamp(acc, -1.0, 1.0);
}

std::vector<double> expectation_z_all(const StateVector &state) {
    std::vector<double> out(state.num_qubits());
    kernels::expectation_z_all(state.amplitudes(), state.num_qubits(), out);
    return out;
}

double sample_pm1_mean(double expectation, std::size_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const double p_plus = std::clamp((1.0 + expectation) / 2.0, 0.0, 1.0);
    std::binomial_distribution<std::size_t> draw(shots, p_plus);
    const auto plus = static_cast<double>(draw(rng));
    const auto total = static_cast<double>(shots);
    return (2.0 * plus - total) / total;
}

double sample_z(const StateVector &state, std::size_t qubit, std::size_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("sample_z: shots must be >= 1");
    }
    return sample_pm1_mean(expectation_z(state, qubit), shots, rng);
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner_product: dimension mismatch (" +
                                    std::to_string(a.num_qubits()) + " vs " +
                                    std::to_string(b.num_qubits()) + " qubits)");
    }
    Amplitude acc{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

StateVector tensor_with_zero_ancillas(const StateVector &state, std::size_t k) {
    if (k == 0) {
        return state;
    }
    if (state.num_qubits() + k > kMaxQubits) {
        throw std::invalid_argument("tensor_with_zero_ancillas: too many qubits");
    }
    const auto src = state.amplitudes();
    std::vector<Amplitude> amps(src.size() << k, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < src.size(); ++i) {
        amps[i << k] = src[i];
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector with_global_phase(const StateVector &state, double phi) {
    auto amps = copy_amps(state);
    const Amplitude phase = std::polar(1.0, phi);
    for (auto &a : amps) {
        a *= phase;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

namespace kernels {

void roty(std::span<Amplitude> amps, std::size_t num_qubits, std::size_t qubit,
          double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const std::size_t stride = std::size_t{1} << (num_qubits - 1 - qubit);
    // Amplitude is layout-compatible with double[2].
    auto *data = reinterpret_cast<double *>(amps.data());
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        double *lo = data + 2 * base;
        double *hi = data + 2 * (base + stride);
        for (std::size_t j = 0; j < 2 * stride; ++j) {
            const double a0 = lo[j];
            const double a1 = hi[j];
            lo[j] = c * a0 - s * a1;
            hi[j] = s * a0 + c * a1;
        }
    }
}

void cnot(std::span<Amplitude> amps, std::size_t num_qubits, std::size_t control,
          std::size_t target) {
    const std::size_t cmask = std::size_t{1} << (num_qubits - 1 - control);
    const std::size_t tmask = std::size_t{1} << (num_qubits - 1 - target);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
}

void apply(std::span<Amplitude> amps, std::size_t num_qubits, const GateOp &op) {
    switch (op.kind) {
    case GateKind::RotY:
        roty(amps, num_qubits, op.target, op.angle);
        break;
    case GateKind::Entangler:
        cnot(amps, num_qubits, *op.control, op.target);
        break;
    }
}

void expectation_z_all(std::span<const Amplitude> amps, std::size_t num_qubits,
                       std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    // Sum of probability mass with bit q set, per qubit.
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        std::size_t bits = i;
        for (std::size_t q = num_qubits; q-- > 0;) {
            if (bits & 1U) {
                out[q] += p;
            }
            bits >>= 1U;
        }
    }
    double total = 0.0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    for (auto &z : out) {
        z = std::clamp(total - 2.0 * z, -1.0, 1.0);
    }
}

void roty(std::span<double> amps, std::size_t num_qubits, std::size_t qubit, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const std::size_t stride = std::size_t{1} << (num_qubits - 1 - qubit);
    double *data = amps.data();
    const std::size_t dim = amps.size();
    if (stride == 1) {
        for (std::size_t i = 0; i < dim; i += 2) {
            const double a0 = data[i];
            const double a1 = data[i + 1];
            data[i] = c * a0 - s * a1;
            data[i + 1] = s * a0 + c * a1;
        }
        return;
    }
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        double *__restrict lo = data + base;
        double *__restrict hi = lo + stride;
        for (std::size_t j = 0; j < stride; ++j) {
            const double a0 = lo[j];
            const double a1 = hi[j];
            lo[j] = c * a0 - s * a1;
            hi[j] = s * a0 + c * a1;
        }
    }
}

void cnot(std::span<double> amps, std::size_t num_qubits, std::size_t control,
          std::size_t target) {
    const std::size_t cbit = num_qubits - 1 - control;
    const std::size_t tbit = num_qubits - 1 - target;
    const std::size_t cmask = std::size_t{1} << cbit;
    const std::size_t tmask = std::size_t{1} << tbit;
    const std::size_t low = std::min(cbit, tbit);
    const std::size_t high = std::max(cbit, tbit);
    const std::size_t quarter = amps.size() >> 2U;
    double *data = amps.data();
    for (std::size_t k = 0; k < quarter; ++k) {
        // Insert zero bits at `low` and `high`, then set the control bit.
        std::size_t i = ((k >> low) << (low + 1)) | (k & ((std::size_t{1} << low) - 1));
        i = ((i >> high) << (high + 1)) | (i & ((std::size_t{1} << high) - 1));
        i |= cmask;
        std::swap(data[i], data[i | tmask]);
    }
}

void apply(std::span<double> amps, std::size_t num_qubits, const GateOp &op) {
    switch (op.kind) {
    case GateKind::RotY:
        roty(amps, num_qubits, op.target, op.angle);
        break;
    case GateKind::Entangler:
        cnot(amps, num_qubits, *op.control, op.target);
        break;
    }
}

void expectation_z_all(std::span<const double> amps, std::size_t num_qubits,
                       std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = amps[i] * amps[i];
        total += p;
        std::size_t bits = i;
        for (std::size_t q = num_qubits; q-- > 0;) {
            if (bits & 1U) {
                out[q] += p;
            }
            bits >>= 1U;
        }
    }
    for (auto &z : out) {
        z = std::clamp(total - 2.0 * z, -1.0, 1.0);
    }
}

} // namespace kernels

} // namespace hqa::sim

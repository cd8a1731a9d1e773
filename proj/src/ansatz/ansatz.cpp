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

#include "hqa/ansatz/ansatz.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hqa::ansatz {

namespace {

void check_params(const AnsatzSpec &spec, const ParamVector &params) {
    spec.validate();
    if (params.size() != spec.param_count()) {
        throw std::invalid_argument("ansatz expects " + std::to_string(spec.param_count()) +
                                    " parameters, got " + std::to_string(params.size()));
    }
}

template <typename T>
void read_out(std::vector<T> &amps, std::size_t nq, const Readout &readout,
              std::span<double> out) {
    sim::kernels::expectation_z_all(std::span<const T>(amps), nq, out);
    if (!readout.exact()) {
        for (auto &z : out) {
            z = sim::sample_pm1_mean(z, readout.shots, *readout.rng);
        }
    }
}

/// Shifted evaluations of every RotY, re-using the prefix state before each gate.
template <typename T>
void shift_sweep(std::vector<T> &prefix, std::size_t nq, const std::vector<sim::GateOp> &gates,
                 const Readout &readout, ZJacobian &out) {
    std::vector<T> work(prefix.size());
    std::vector<double> z_plus(nq);
    std::vector<double> z_minus(nq);
    std::size_t param_index = 0;
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const auto &gate = gates[g];
        if (gate.kind == sim::GateKind::RotY) {
            for (int sign : {+1, -1}) {
                work = prefix;
                sim::kernels::roty(std::span<T>(work), nq, gate.target,
                                   gate.angle + sign * kShift);
                for (std::size_t h = g + 1; h < gates.size(); ++h) {
                    sim::kernels::apply(std::span<T>(work), nq, gates[h]);
                }
                read_out(work, nq, readout, sign > 0 ? z_plus : z_minus);
            }
            for (std::size_t q = 0; q < nq; ++q) {
                out.jacobian(static_cast<Eigen::Index>(q),
                             static_cast<Eigen::Index>(param_index)) =
                    kShiftScale * (z_plus[q] - z_minus[q]);
            }
            ++param_index;
        }
        sim::kernels::apply(std::span<T>(prefix), nq, gate);
    }
    read_out(prefix, nq, readout, out.expectations);
}

} // namespace

void AnsatzSpec::validate() const {
    if (num_qubits < 1 || num_qubits > sim::kMaxQubits) {
        throw std::invalid_argument("ansatz num_qubits out of range");
    }
    if (num_layers < 1) {
        throw std::invalid_argument("ansatz needs at least one layer");
    }
    if (topology == Topology::Ring && num_qubits < 3) {
        throw std::invalid_argument("ring topology needs at least 3 qubits");
    }
}

ParamVector ParamVector::shifted(std::size_t index, double delta) const {
    if (index >= values_.size()) {
        throw std::out_of_range("parameter index " + std::to_string(index) +
                                " out of range");
    }
    ParamVector out = *this;
    out.values_[index] += delta;
    return out;
}

std::vector<sim::GateOp> build_gates(const AnsatzSpec &spec, const ParamVector &params) {
    check_params(spec, params);
    const std::size_t n = spec.num_qubits;
    std::vector<sim::GateOp> gates;
    gates.reserve(spec.num_layers * (2 * n));
    for (std::size_t layer = 0; layer < spec.num_layers; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            gates.push_back(sim::GateOp::roty(q, params[layer * n + q]));
        }
        for (std::size_t q = 0; q + 1 < n; ++q) {
            gates.push_back(sim::GateOp::cnot(q, q + 1));
        }
        if (spec.topology == Topology::Ring) {
            gates.push_back(sim::GateOp::cnot(n - 1, 0));
        }
    }
    return gates;
}

sim::StateVector apply_ansatz(const sim::StateVector &state, const AnsatzSpec &spec,
                              const ParamVector &params) {
    if (state.num_qubits() != spec.num_qubits) {
        throw std::invalid_argument("apply_ansatz: state has " +
                                    std::to_string(state.num_qubits()) +
                                    " qubits, ansatz expects " +
                                    std::to_string(spec.num_qubits));
    }
    const auto gates = build_gates(spec, params);
    return sim::apply_gates(state, gates);
}

double shift_gradient(const ScalarEval &eval, const ParamVector &params, std::size_t index) {
    if (index >= params.size()) {
        throw std::out_of_range("shift_gradient: index out of range");
    }
    return kShiftScale * (eval(params.shifted(index, kShift)) -
                          eval(params.shifted(index, -kShift)));
}

Matrix shift_jacobian(const VectorEval &eval, const ParamVector &params) {
    Matrix jac;
    for (std::size_t k = 0; k < params.size(); ++k) {
        const auto plus = eval(params.shifted(k, kShift));
        const auto minus = eval(params.shifted(k, -kShift));
        if (plus.size() != minus.size()) {
            throw std::runtime_error("shift_jacobian: output size changed between shifts");
        }
        if (k == 0) {
            jac.resize(static_cast<Eigen::Index>(plus.size()),
                       static_cast<Eigen::Index>(params.size()));
        } else if (static_cast<Eigen::Index>(plus.size()) != jac.rows()) {
            throw std::runtime_error("shift_jacobian: output size changed between params");
        }
        for (std::size_t r = 0; r < plus.size(); ++r) {
            jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
                kShiftScale * (plus[r] - minus[r]);
        }
    }
    return jac;
}

ZJacobian z_expectations_with_jacobian(const sim::StateVector &input,
                                       const AnsatzSpec &spec, const ParamVector &params,
                                       Readout readout) {
    if (input.num_qubits() != spec.num_qubits) {
        throw std::invalid_argument("z_expectations_with_jacobian: qubit count mismatch");
    }
    if (!readout.exact() && readout.rng == nullptr) {
        throw std::invalid_argument("sampled readout needs an rng");
    }
    const auto gates = build_gates(spec, params);
    const std::size_t nq = spec.num_qubits;
    const auto rows = static_cast<Eigen::Index>(nq);

    ZJacobian out;
    out.expectations.assign(nq, 0.0);
    out.jacobian = Matrix::Zero(rows, static_cast<Eigen::Index>(spec.param_count()));

    const auto amps = input.amplitudes();
    const bool real = std::all_of(amps.begin(), amps.end(),
                                  [](const sim::Amplitude &a) { return a.imag() == 0.0; });
    if (real) {
        std::vector<double> prefix(amps.size());
        std::transform(amps.begin(), amps.end(), prefix.begin(),
                       [](const sim::Amplitude &a) { return a.real(); });
        shift_sweep(prefix, nq, gates, readout, out);
    } else {
        std::vector<sim::Amplitude> prefix(amps.begin(), amps.end());
        shift_sweep(prefix, nq, gates, readout, out);
    }
    return out;
}

} // namespace hqa::ansatz

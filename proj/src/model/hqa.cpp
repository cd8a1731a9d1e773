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

#include "hqa/model/hqa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hqa/common/error.hpp"
#include "hqa/optim/budget.hpp"

namespace hqa::model {

namespace {

void check_input(const HqaModel &model, const sim::StateVector &state) {
    if (state.num_qubits() != model.n()) {
        throw std::invalid_argument("HQA expects " + std::to_string(model.n()) +
                                    "-qubit inputs, got " +
                                    std::to_string(state.num_qubits()));
    }
}

sim::StateVector encoder_register(const HqaModel &model, const sim::StateVector &state) {
    check_input(model, state);
    return sim::tensor_with_zero_ancillas(state, model.shape.register_qubits() - model.n());
}

sim::StateVector decoder_output(const HqaModel &model, const ansatz::ParamVector &theta) {
    return ansatz::apply_ansatz(sim::zero_state(model.n()), model.decoder_spec, theta);
}

ansatz::ParamVector to_params(const Vector &v) {
    return ansatz::ParamVector(std::vector<double>(v.data(), v.data() + v.size()));
}

nlohmann::json matrix_json(const Matrix &m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json &j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
        throw FormatError("checkpoint matrix has wrong row count");
    }
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw FormatError("checkpoint matrix has wrong column count");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                j[r][c].get<double>();
        }
    }
    return m;
}

Vector vector_from_json(const nlohmann::json &j, std::size_t size) {
    if (!j.is_array() || j.size() != size) {
        throw FormatError("checkpoint vector has wrong length");
    }
    Vector v(static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < size; ++i) {
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

std::string topology_name(ansatz::Topology t) {
    return t == ansatz::Topology::Ring ? "ring" : "chain";
}

} // namespace

void HqaShape::validate() const {
    if (input_qubits < 1) {
        throw std::invalid_argument("HQA needs at least one input qubit");
    }
    if (latent_dim < 1) {
        throw std::invalid_argument("latent dimension v must be >= 1");
    }
    if (register_qubits() > sim::kMaxQubits) {
        throw std::invalid_argument("latent dimension exceeds simulator limit");
    }
    if (encoder_layers < 1 || decoder_layers < 1) {
        throw std::invalid_argument("ansatz layer counts must be >= 1");
    }
}

HqaModel HqaModel::zeros(const HqaShape &shape) {
    shape.validate();
    HqaModel m;
    m.shape = shape;
    m.encoder_spec = {shape.register_qubits(), shape.encoder_layers, shape.topology};
    m.decoder_spec = {shape.input_qubits, shape.decoder_layers, shape.topology};
    m.encoder_spec.validate();
    m.decoder_spec.validate();
    m.alpha = ansatz::ParamVector(m.encoder_spec.param_count(), 0.0);
    m.ann = AnnWeights::zeros(shape.latent_dim, shape.hidden_dim(),
                              m.decoder_spec.param_count());
    return m;
}

HqaModel HqaModel::create(const HqaShape &shape, Rng &rng) {
    auto m = zeros(shape);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (auto &a : m.alpha.values()) {
        a = angle(rng);
    }
    m.ann = AnnWeights::random(shape.latent_dim, shape.hidden_dim(),
                               m.decoder_spec.param_count(), rng);
    return m;
}

void HqaModel::validate() const {
    shape.validate();
    if (alpha.size() != encoder_spec.param_count()) {
        throw std::invalid_argument("encoder parameter count mismatch");
    }
    ann.validate();
    if (ann.input_dim() != v() || ann.output_dim() != decoder_spec.param_count()) {
        throw std::invalid_argument("ANN shape does not match the circuits");
    }
}

bool operator==(const HqaModel &a, const HqaModel &b) {
    return a.shape.input_qubits == b.shape.input_qubits &&
           a.shape.latent_dim == b.shape.latent_dim &&
           a.shape.encoder_layers == b.shape.encoder_layers &&
           a.shape.decoder_layers == b.shape.decoder_layers &&
           a.shape.topology == b.shape.topology && a.alpha == b.alpha &&
           a.ann.w1 == b.ann.w1 && a.ann.b1 == b.ann.b1 && a.ann.w2 == b.ann.w2 &&
           a.ann.b2 == b.ann.b2;
}

LatentVector encode(const HqaModel &model, const sim::StateVector &state) {
    const auto out =
        ansatz::apply_ansatz(encoder_register(model, state), model.encoder_spec, model.alpha);
    auto z = sim::expectation_z_all(out);
    z.resize(model.v());
    return {std::move(z)};
}

LatentVector encode_sampled(const HqaModel &model, const sim::StateVector &state,
                            std::size_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("encode_sampled: shots must be >= 1");
    }
    auto xi = encode(model, state);
    for (auto &z : xi.components) {
        z = std::clamp(sim::sample_pm1_mean(z, shots, rng), -1.0, 1.0);
    }
    return xi;
}

ansatz::ParamVector ann_angles(const HqaModel &model, const LatentVector &xi) {
    if (xi.size() != model.v()) {
        throw std::invalid_argument("latent vector has " + std::to_string(xi.size()) +
                                    " components, model expects " +
                                    std::to_string(model.v()));
    }
    return to_params(ann_forward(model.ann, xi.as_vector()));
}

sim::StateVector decode(const HqaModel &model, const LatentVector &xi) {
    return decoder_output(model, ann_angles(model, xi));
}

sim::StateVector reconstruct(const HqaModel &model, const sim::StateVector &state) {
    return decode(model, encode(model, state));
}

double loss_batch(const HqaModel &model, std::span<const sim::StateVector> states) {
    if (states.empty()) {
        throw std::invalid_argument("loss_batch: empty batch");
    }
    double total = 0.0;
    for (const auto &s : states) {
        total += sim::fidelity(reconstruct(model, s), s);
    }
    return std::clamp(1.0 - total / static_cast<double>(states.size()), 0.0, 1.0);
}

double swap_test_sampled(const sim::StateVector &a, const sim::StateVector &b,
                         std::size_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("swap_test_sampled: shots must be >= 1");
    }
    const double f = sim::fidelity(a, b);
    // Ancilla reads z = +1 with probability (1 + F) / 2.
    const double estimate = sim::sample_pm1_mean(f, shots, rng);
    return std::clamp(estimate, 0.0, 1.0);
}

double mse_amplitude(const sim::StateVector &a, const sim::StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("mse_amplitude: dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        const double d = std::abs(a[i]) - std::abs(b[i]);
        acc += d * d;
    }
    return acc;
}

FullGradient grad_full(const HqaModel &model, std::span<const sim::StateVector> batch,
                       GradientMode mode, Rng *rng) {
    if (batch.empty()) {
        throw std::invalid_argument("grad_full: empty batch");
    }
    const bool exact = mode.is_exact();
    if (!exact && (mode.encoder_shots == 0 || mode.fidelity_shots == 0)) {
        throw std::invalid_argument("grad_full: sampled mode needs both shot counts >= 1");
    }
    if (!exact && rng == nullptr) {
        throw std::invalid_argument("grad_full: sampled mode needs an rng");
    }
    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    const std::size_t p_enc = model.encoder_spec.param_count();
    const std::size_t p_dec = model.decoder_spec.param_count();

    FullGradient g;
    g.d_alpha.assign(p_enc, 0.0);
    g.d_ann = AnnWeights::zeros(model.ann.input_dim(), model.ann.hidden_dim(),
                                model.ann.output_dim());
    Vector d_alpha = Vector::Zero(static_cast<Eigen::Index>(p_enc));
    double fid_total = 0.0;

    const ansatz::Readout readout =
        exact ? ansatz::Readout{} : ansatz::Readout{mode.encoder_shots, rng};

    for (const auto &state : batch) {
        const auto reg = encoder_register(model, state);
        const auto enc =
            ansatz::z_expectations_with_jacobian(reg, model.encoder_spec, model.alpha, readout);
        const auto v = static_cast<Eigen::Index>(model.v());
        Vector xi = Eigen::Map<const Vector>(enc.expectations.data(), v);
        xi = xi.cwiseMax(-1.0).cwiseMin(1.0);

        const auto forward = ann_forward_cached(model.ann, xi);
        const auto theta = to_params(forward.output);

        const auto fid = [&](const ansatz::ParamVector &t) {
            const auto out = decoder_output(model, t);
            return exact ? sim::fidelity(out, state)
                         : swap_test_sampled(out, state, mode.fidelity_shots, *rng);
        };
        fid_total += fid(theta);

        // dL/dF = -1/B for the batch-mean loss.
        Vector d_theta(static_cast<Eigen::Index>(p_dec));
        for (std::size_t i = 0; i < p_dec; ++i) {
            d_theta(static_cast<Eigen::Index>(i)) =
                -inv_batch * ansatz::shift_gradient(fid, theta, i);
        }

        const auto back = ann_backward(model.ann, xi, forward, d_theta);
        g.d_ann.w1 += back.weights.w1;
        g.d_ann.b1 += back.weights.b1;
        g.d_ann.w2 += back.weights.w2;
        g.d_ann.b2 += back.weights.b2;
        d_alpha += enc.jacobian.topRows(v).transpose() * back.input;
        g.d_theta.push_back(std::move(d_theta));

        if (!exact) {
            g.samples.drawn += (1 + 2 * p_enc) * mode.encoder_shots +
                               (1 + 2 * p_dec) * mode.fidelity_shots;
        }
    }
    for (std::size_t k = 0; k < p_enc; ++k) {
        g.d_alpha[k] = d_alpha(static_cast<Eigen::Index>(k));
    }
    g.loss = 1.0 - fid_total * inv_batch;
    if (!exact) {
        g.samples.budget = optim::sample_budget_for_shots(p_enc, p_dec, mode.encoder_shots,
                                                          mode.fidelity_shots);
    }
    return g;
}

nlohmann::json model_to_json(const HqaModel &model) {
    nlohmann::json j;
    j["n"] = model.n();
    j["v"] = model.v();
    j["encoder_layers"] = model.shape.encoder_layers;
    j["decoder_layers"] = model.shape.decoder_layers;
    j["topology"] = topology_name(model.shape.topology);
    j["alpha"] = std::vector<double>(model.alpha.values().begin(), model.alpha.values().end());
    j["ann"]["w1"] = matrix_json(model.ann.w1);
    j["ann"]["b1"] = std::vector<double>(model.ann.b1.data(),
                                         model.ann.b1.data() + model.ann.b1.size());
    j["ann"]["w2"] = matrix_json(model.ann.w2);
    j["ann"]["b2"] = std::vector<double>(model.ann.b2.data(),
                                         model.ann.b2.data() + model.ann.b2.size());
    return j;
}

HqaModel model_from_json(const nlohmann::json &j) {
    try {
        HqaShape shape;
        shape.input_qubits = j.at("n").get<std::size_t>();
        shape.latent_dim = j.at("v").get<std::size_t>();
        shape.encoder_layers = j.at("encoder_layers").get<std::size_t>();
        shape.decoder_layers = j.at("decoder_layers").get<std::size_t>();
        const auto topo = j.at("topology").get<std::string>();
        if (topo != "chain" && topo != "ring") {
            throw FormatError("unknown topology '" + topo + "'");
        }
        shape.topology = topo == "ring" ? ansatz::Topology::Ring : ansatz::Topology::Chain;
        auto m = HqaModel::zeros(shape);
        const auto alpha = j.at("alpha").get<std::vector<double>>();
        if (alpha.size() != m.alpha.size()) {
            throw FormatError("checkpoint alpha has wrong length");
        }
        m.alpha = ansatz::ParamVector(alpha);
        const auto &ann = j.at("ann");
        const auto in = m.ann.input_dim();
        const auto hid = m.ann.hidden_dim();
        const auto out = m.ann.output_dim();
        m.ann.w1 = matrix_from_json(ann.at("w1"), hid, in);
        m.ann.b1 = vector_from_json(ann.at("b1"), hid);
        m.ann.w2 = matrix_from_json(ann.at("w2"), out, hid);
        m.ann.b2 = vector_from_json(ann.at("b2"), out);
        m.validate();
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("malformed model record: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("inconsistent model record: ") + e.what());
    }
}

} // namespace hqa::model

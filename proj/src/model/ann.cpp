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

#include "hqa/model/ann.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hqa::model {

namespace {

void fill_uniform(Matrix &m, double bound, Rng &rng) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    // Row-major fill so the draw order matches flatten().
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) = dist(rng);
        }
    }
}

void fill_uniform(Vector &v, double bound, Rng &rng) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = dist(rng);
    }
}

} // namespace

AnnWeights AnnWeights::zeros(std::size_t input, std::size_t hidden, std::size_t output) {
    const auto in = static_cast<Eigen::Index>(input);
    const auto hid = static_cast<Eigen::Index>(hidden);
    const auto out = static_cast<Eigen::Index>(output);
    return {Matrix::Zero(hid, in), Vector::Zero(hid), Matrix::Zero(out, hid),
            Vector::Zero(out)};
}

AnnWeights AnnWeights::random(std::size_t input, std::size_t hidden, std::size_t output,
                              Rng &rng) {
    auto ann = zeros(input, hidden, output);
    const double bound1 = 1.0 / std::sqrt(static_cast<double>(input));
    const double bound2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    fill_uniform(ann.w1, bound1, rng);
    fill_uniform(ann.b1, bound1, rng);
    fill_uniform(ann.w2, bound2, rng);
    fill_uniform(ann.b2, bound2, rng);
    return ann;
}

std::size_t AnnWeights::parameter_count() const noexcept {
    return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() + b2.size());
}

std::vector<double> AnnWeights::flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (Eigen::Index r = 0; r < w1.rows(); ++r) {
        for (Eigen::Index c = 0; c < w1.cols(); ++c) {
            flat.push_back(w1(r, c));
        }
    }
    flat.insert(flat.end(), b1.data(), b1.data() + b1.size());
    for (Eigen::Index r = 0; r < w2.rows(); ++r) {
        for (Eigen::Index c = 0; c < w2.cols(); ++c) {
            flat.push_back(w2(r, c));
        }
    }
    flat.insert(flat.end(), b2.data(), b2.data() + b2.size());
    return flat;
}

void AnnWeights::assign(std::span<const double> flat) {
    if (flat.size() != parameter_count()) {
        throw std::invalid_argument("AnnWeights::assign: expected " +
                                    std::to_string(parameter_count()) + " values, got " +
                                    std::to_string(flat.size()));
    }
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < w1.rows(); ++r) {
        for (Eigen::Index c = 0; c < w1.cols(); ++c) {
            w1(r, c) = flat[k++];
        }
    }
    for (Eigen::Index i = 0; i < b1.size(); ++i) {
        b1(i) = flat[k++];
    }
    for (Eigen::Index r = 0; r < w2.rows(); ++r) {
        for (Eigen::Index c = 0; c < w2.cols(); ++c) {
            w2(r, c) = flat[k++];
        }
    }
    for (Eigen::Index i = 0; i < b2.size(); ++i) {
        b2(i) = flat[k++];
    }
}

void AnnWeights::validate() const {
    if (b1.size() != w1.rows() || w2.cols() != w1.rows() || b2.size() != w2.rows()) {
        throw std::invalid_argument("AnnWeights: inconsistent layer shapes");
    }
    if (!w1.allFinite() || !b1.allFinite() || !w2.allFinite() || !b2.allFinite()) {
        throw std::invalid_argument("AnnWeights: non-finite entry");
    }
}

AnnForward ann_forward_cached(const AnnWeights &ann, const Vector &x) {
    if (x.size() != ann.w1.cols()) {
        throw std::invalid_argument("ann_forward: input has " + std::to_string(x.size()) +
                                    " entries, network expects " +
                                    std::to_string(ann.w1.cols()));
    }
    AnnForward f;
    f.hidden = (ann.w1 * x + ann.b1).array().tanh().matrix();
    f.output = ann.w2 * f.hidden + ann.b2;
    return f;
}

Vector ann_forward(const AnnWeights &ann, const Vector &x) {
    return ann_forward_cached(ann, x).output;
}

AnnGradient ann_backward(const AnnWeights &ann, const Vector &x, const AnnForward &forward,
                         const Vector &d_output) {
    if (d_output.size() != ann.w2.rows()) {
        throw std::invalid_argument("ann_backward: output gradient shape mismatch");
    }
    AnnGradient g;
    g.weights.w2 = d_output * forward.hidden.transpose();
    g.weights.b2 = d_output;
    const Vector d_pre =
        ((ann.w2.transpose() * d_output).array() * (1.0 - forward.hidden.array().square()))
            .matrix();
    g.weights.w1 = d_pre * x.transpose();
    g.weights.b1 = d_pre;
    g.input = ann.w1.transpose() * d_pre;
    return g;
}

Matrix ann_input_jacobian(const AnnWeights &ann, const Vector &x) {
    const auto f = ann_forward_cached(ann, x);
    const Vector slope = (1.0 - f.hidden.array().square()).matrix();
    return ann.w2 * slope.asDiagonal() * ann.w1;
}

} // namespace hqa::model

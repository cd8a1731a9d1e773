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

#include "hqa/analysis/pca.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace hqa::analysis {

PcaModel pca_fit(const Matrix &x) {
    if (x.rows() < 2) {
        throw std::invalid_argument("pca_fit needs at least two samples");
    }
    PcaModel m;
    m.mean = x.colwise().mean().transpose();
    const Matrix centered = x.rowwise() - m.mean.transpose();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(x.rows() - 1);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("pca_fit: eigendecomposition failed");
    }
    const auto d = cov.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    // Eigen returns ascending eigenvalues; tiny negatives are round-off.
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return eig.eigenvalues()(a) > eig.eigenvalues()(b);
    });
    m.components.resize(d, d);
    m.variances.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto src = order[static_cast<std::size_t>(i)];
        m.components.row(i) = eig.eigenvectors().col(src).transpose();
        m.variances(i) = std::max(0.0, eig.eigenvalues()(src));
    }
    const double total = m.variances.sum();
    m.explained_variance = total > 0.0 ? Vector(m.variances / total) : Vector::Zero(d);
    return m;
}

Matrix pca_project(const PcaModel &model, const Matrix &x, std::size_t dims) {
    if (dims > model.dimension()) {
        throw std::out_of_range("pca_project: requested " + std::to_string(dims) +
                                " of " + std::to_string(model.dimension()) + " components");
    }
    if (x.cols() != model.mean.size()) {
        throw std::invalid_argument("pca_project: column count mismatch");
    }
    const Matrix centered = x.rowwise() - model.mean.transpose();
    return centered * model.components.topRows(static_cast<Eigen::Index>(dims)).transpose();
}

Matrix pca_project_components(const PcaModel &model, const Matrix &x,
                              const std::vector<std::size_t> &which) {
    if (x.cols() != model.mean.size()) {
        throw std::invalid_argument("pca_project_components: column count mismatch");
    }
    const Matrix centered = x.rowwise() - model.mean.transpose();
    Matrix out(x.rows(), static_cast<Eigen::Index>(which.size()));
    for (std::size_t j = 0; j < which.size(); ++j) {
        if (which[j] >= model.dimension()) {
            throw std::out_of_range("pca_project_components: component index out of range");
        }
        out.col(static_cast<Eigen::Index>(j)) =
            centered * model.components.row(static_cast<Eigen::Index>(which[j])).transpose();
    }
    return out;
}

Matrix pca_inverse(const PcaModel &model, const Matrix &coords) {
    if (coords.cols() > model.components.rows()) {
        throw std::invalid_argument("pca_inverse: too many coordinates");
    }
    const Matrix back = coords * model.components.topRows(coords.cols());
    return back.rowwise() + model.mean.transpose();
}

Matrix component_slice(const PcaModel &model, const Matrix &x, ComponentSlice slice) {
    const std::size_t d = model.dimension();
    switch (slice.kind) {
    case SliceKind::All:
        return x;
    case SliceKind::TopPrincipal:
        if (slice.count > d) {
            throw std::out_of_range("component_slice: m exceeds dimension");
        }
        return pca_project(model, x, slice.count);
    case SliceKind::Minor: {
        if (slice.count > d) {
            throw std::out_of_range("component_slice: m exceeds dimension");
        }
        std::vector<std::size_t> which(slice.count);
        std::iota(which.begin(), which.end(), d - slice.count);
        return pca_project_components(model, x, which);
    }
    }
    return x;
}

Matrix component_slice(const Matrix &x, ComponentSlice slice) {
    if (slice.kind == SliceKind::All) {
        return x;
    }
    return component_slice(pca_fit(x), x, slice);
}

} // namespace hqa::analysis

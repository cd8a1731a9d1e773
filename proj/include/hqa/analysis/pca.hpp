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
#include <vector>

#include "hqa/common/linalg.hpp"

namespace hqa::analysis {

/// Principal axes of a data matrix (rows are samples).
struct PcaModel {
    Vector mean;
    Matrix components;           ///< orthonormal rows, descending variance
    Vector variances;            ///< eigenvalues of the sample covariance
    Vector explained_variance;   ///< variances / total variance

    [[nodiscard]] std::size_t dimension() const noexcept {
        return static_cast<std::size_t>(components.rows());
    }
};

/// Eigendecomposition of the (K - 1)-normalized covariance. Needs K >= 2.
/// Zero-variance directions are ranked last.
[[nodiscard]] PcaModel pca_fit(const Matrix &x);

/// Coordinates along the first `dims` components.
[[nodiscard]] Matrix pca_project(const PcaModel &model, const Matrix &x, std::size_t dims);
/// Coordinates along the listed component indices, in the given order.
[[nodiscard]] Matrix pca_project_components(const PcaModel &model, const Matrix &x,
                                            const std::vector<std::size_t> &which);
/// Maps coordinates on the first coords.cols() components back to data space.
[[nodiscard]] Matrix pca_inverse(const PcaModel &model, const Matrix &coords);

enum class SliceKind { All, TopPrincipal, Minor };

struct ComponentSlice {
    SliceKind kind = SliceKind::All;
    std::size_t count = 0; ///< m, ignored for All

    static ComponentSlice all() { return {SliceKind::All, 0}; }
    static ComponentSlice top(std::size_t m) { return {SliceKind::TopPrincipal, m}; }
    static ComponentSlice minor(std::size_t m) { return {SliceKind::Minor, m}; }
};

/// all: X unchanged; top(m): first m PCA coordinates; minor(m): last m.
[[nodiscard]] Matrix component_slice(const PcaModel &model, const Matrix &x,
                                     ComponentSlice slice);
/// Convenience overload fitting PCA on x itself.
[[nodiscard]] Matrix component_slice(const Matrix &x, ComponentSlice slice);

} // namespace hqa::analysis

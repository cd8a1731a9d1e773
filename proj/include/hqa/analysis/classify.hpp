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
#include <string>
#include <vector>

#include "hqa/common/linalg.hpp"

namespace hqa::analysis {

struct LogRegConfig {
    double l2 = 1e-4;              ///< lambda on the weights; the bias is not penalized
    double tolerance = 1e-6;       ///< stop when the gradient norm drops below this
    std::size_t max_iterations = 100000;
};

struct LogRegModel {
    Vector weights;
    double bias = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;
};

/// Mean log-likelihood of labels y in {0, 1} minus (l2 / 2) |w|^2.
[[nodiscard]] double logreg_objective(const Matrix &x, const std::vector<int> &y,
                                      const Vector &weights, double bias, double l2);
/// Gradient of logreg_objective; the last entry is d/d bias.
[[nodiscard]] Vector logreg_gradient(const Matrix &x, const std::vector<int> &y,
                                     const Vector &weights, double bias, double l2);

/// Gradient ascent with Barzilai-Borwein steps and a backtracking safeguard.
[[nodiscard]] LogRegModel logreg_fit(const Matrix &x, const std::vector<int> &y,
                                     LogRegConfig config = {});
[[nodiscard]] Vector logreg_probability(const LogRegModel &model, const Matrix &x);
/// Labels in {0, 1}.
[[nodiscard]] std::vector<int> logreg_predict(const LogRegModel &model, const Matrix &x);

enum class KernelKind { Linear, Poly, Rbf };

struct Kernel {
    KernelKind kind = KernelKind::Rbf;
    int degree = 3;
    double gamma = 1.0;

    static Kernel linear() { return {KernelKind::Linear, 1, 1.0}; }
    /// (gamma <x, x'> + 1)^degree
    static Kernel poly(int degree, double gamma) { return {KernelKind::Poly, degree, gamma}; }
    /// exp(-gamma |x - x'|^2)
    static Kernel rbf(double gamma) { return {KernelKind::Rbf, 0, gamma}; }

    [[nodiscard]] double operator()(const Vector &a, const Vector &b) const;
};

[[nodiscard]] std::string kernel_name(const Kernel &k);

struct SvmConfig {
    double c = 1.0;
    double tolerance = 1e-3;       ///< maximal KKT violation at convergence
    std::size_t max_iterations = 1000000;
};

struct SvmModel {
    Kernel kernel;
    double c = 1.0;
    Vector duals;                  ///< alpha_i for every training row
    Matrix support;                ///< rows with alpha_i > 0
    Vector support_coef;           ///< alpha_i y_i of those rows
    std::vector<int> labels;       ///< training labels, +-1
    double bias = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Soft-margin dual by SMO, picking the maximal-violating pair each step.
/// Labels must be +-1.
[[nodiscard]] SvmModel svm_fit(const Matrix &x, const std::vector<int> &y, const Kernel &kernel,
                               SvmConfig config = {});
[[nodiscard]] Vector svm_decision(const SvmModel &model, const Matrix &x);
/// Labels in {-1, +1}.
[[nodiscard]] std::vector<int> svm_predict(const SvmModel &model, const Matrix &x);

/// {0, 1} -> {-1, +1}
[[nodiscard]] std::vector<int> to_pm1(const std::vector<int> &labels01);
/// {-1, +1} -> {0, 1}
[[nodiscard]] std::vector<int> to_01(const std::vector<int> &labels_pm1);

} // namespace hqa::analysis

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
#include "hqa/common/rng.hpp"

namespace hqa::analysis {

struct KMeansResult {
    std::vector<int> assignment;
    Matrix centroids;                 ///< k x d cluster means
    std::vector<double> distortion;   ///< sum of squared distances after each assignment
    std::size_t iterations = 0;
    std::size_t reseeds = 0;          ///< empty clusters re-seeded
};

/**
 * @brief Lloyd's algorithm with Euclidean distance.
 *
 * Seeds are k distinct rows drawn at random. Assignment and mean updates
 * alternate until no point changes cluster. A cluster that empties is
 * re-seeded at the point farthest from its current centroid.
 */
[[nodiscard]] KMeansResult kmeans(const Matrix &x, std::size_t k, Rng &rng,
                                  std::size_t max_iterations = 1000);

[[nodiscard]] double kmeans_distortion(const Matrix &x, const std::vector<int> &assignment,
                                       const Matrix &centroids);

struct GaussianMixture {
    Vector weights;
    std::vector<Vector> means;
    std::vector<Matrix> covariances; ///< full covariances
};

struct GmmConfig {
    double tolerance = 1e-6;       ///< stop when the mean log-likelihood gains less
    std::size_t max_iterations = 1000;
    double regularization = 1e-6;  ///< added to the diagonal of a singular covariance
};

struct GmmFit {
    GaussianMixture mixture;
    std::vector<double> log_likelihood; ///< mean per-sample value before each M-step
    std::size_t iterations = 0;
    bool converged = false;
    std::size_t regularized = 0;        ///< covariances that needed the diagonal jitter
};

/// EM for a full-covariance mixture, initialized from kmeans. Needs K > k (d + 1).
[[nodiscard]] GmmFit gmm_fit(const Matrix &x, std::size_t k, Rng &rng, GmmConfig config = {});
/// Per-row responsibilities, (K x k).
[[nodiscard]] Matrix gmm_responsibilities(const GaussianMixture &mixture, const Matrix &x);
[[nodiscard]] std::vector<int> gmm_predict(const GaussianMixture &mixture, const Matrix &x);
/// Mean per-sample log-likelihood.
[[nodiscard]] double gmm_log_likelihood(const GaussianMixture &mixture, const Matrix &x);

} // namespace hqa::analysis

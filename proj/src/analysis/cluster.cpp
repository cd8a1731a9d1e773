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

#include "hqa/analysis/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

namespace hqa::analysis {

namespace {

std::vector<int> assign_nearest(const Matrix &x, const Matrix &centroids) {
    std::vector<int> out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        Eigen::Index best = 0;
        (centroids.rowwise() - x.row(i)).rowwise().squaredNorm().minCoeff(&best);
        out[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return out;
}

struct Component {
    Eigen::LLT<Matrix> chol;
    double log_norm = 0.0; ///< log weight - d/2 log 2pi - 1/2 log det
};

/// Cholesky of each covariance, jittering the diagonal only when it fails.
std::vector<Component> factor(GaussianMixture &mix, double reg, std::size_t *regularized) {
    std::vector<Component> out;
    const auto d = static_cast<double>(mix.means.front().size());
    for (std::size_t c = 0; c < mix.means.size(); ++c) {
        Component comp;
        comp.chol.compute(mix.covariances[c]);
        double jitter = reg;
        while (comp.chol.info() != Eigen::Success ||
               comp.chol.matrixLLT().diagonal().minCoeff() <= 0.0) {
            mix.covariances[c].diagonal().array() += jitter;
            comp.chol.compute(mix.covariances[c]);
            jitter *= 10.0;
            if (regularized != nullptr) {
                ++*regularized;
            }
            if (jitter > 1e6) {
                throw std::runtime_error("gmm: covariance could not be regularized");
            }
        }
        const double log_det =
            2.0 * comp.chol.matrixLLT().diagonal().array().log().sum();
        comp.log_norm = std::log(mix.weights(static_cast<Eigen::Index>(c))) -
                        0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * log_det;
        out.push_back(std::move(comp));
    }
    return out;
}

/// Log joint densities log(w_c N(x_i | c)), (K x k).
Matrix log_joint(const GaussianMixture &mix, const std::vector<Component> &comps,
                 const Matrix &x) {
    Matrix out(x.rows(), static_cast<Eigen::Index>(comps.size()));
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const Matrix centered = (x.rowwise() - mix.means[c].transpose()).transpose();
        const Matrix z = comps[c].chol.matrixL().solve(centered);
        out.col(static_cast<Eigen::Index>(c)) =
            (comps[c].log_norm - 0.5 * z.colwise().squaredNorm().array()).matrix().transpose();
    }
    return out;
}

/// Row-wise log-sum-exp, writing normalized responsibilities into `resp`.
double normalize_rows(const Matrix &logp, Matrix &resp) {
    resp.resize(logp.rows(), logp.cols());
    double total = 0.0;
    for (Eigen::Index i = 0; i < logp.rows(); ++i) {
        const double top = logp.row(i).maxCoeff();
        const double lse = top + std::log((logp.row(i).array() - top).exp().sum());
        resp.row(i) = (logp.row(i).array() - lse).exp().matrix();
        total += lse;
    }
    return total / static_cast<double>(logp.rows());
}

} // namespace

double kmeans_distortion(const Matrix &x, const std::vector<int> &assignment,
                         const Matrix &centroids) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        acc += (x.row(i) - centroids.row(assignment[static_cast<std::size_t>(i)])).squaredNorm();
    }
    return acc;
}

KMeansResult kmeans(const Matrix &x, std::size_t k, Rng &rng, std::size_t max_iterations) {
    const auto rows = static_cast<std::size_t>(x.rows());
    if (k < 1 || k > rows) {
        throw std::invalid_argument("kmeans: need 1 <= k <= number of points, got k=" +
                                    std::to_string(k));
    }
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, rows - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    KMeansResult res;
    res.centroids.resize(static_cast<Eigen::Index>(k), x.cols());
    for (std::size_t c = 0; c < k; ++c) {
        res.centroids.row(static_cast<Eigen::Index>(c)) = x.row(static_cast<Eigen::Index>(order[c]));
    }
    res.assignment = assign_nearest(x, res.centroids);
    res.distortion.push_back(kmeans_distortion(x, res.assignment, res.centroids));

    for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
        Matrix sums = Matrix::Zero(static_cast<Eigen::Index>(k), x.cols());
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            const auto c = static_cast<std::size_t>(res.assignment[i]);
            sums.row(static_cast<Eigen::Index>(c)) += x.row(static_cast<Eigen::Index>(i));
            ++counts[c];
        }
        for (std::size_t c = 0; c < k; ++c) {
            const auto ci = static_cast<Eigen::Index>(c);
            if (counts[c] > 0) {
                res.centroids.row(ci) = sums.row(ci) / static_cast<double>(counts[c]);
                continue;
            }
            Eigen::Index far = 0;
            Vector d2(x.rows());
            for (Eigen::Index i = 0; i < x.rows(); ++i) {
                d2(i) = (x.row(i) -
                         res.centroids.row(res.assignment[static_cast<std::size_t>(i)]))
                            .squaredNorm();
            }
            d2.maxCoeff(&far);
            res.centroids.row(ci) = x.row(far);
            ++res.reseeds;
        }
        auto next = assign_nearest(x, res.centroids);
        res.distortion.push_back(kmeans_distortion(x, next, res.centroids));
        if (next == res.assignment) {
            break;
        }
        res.assignment = std::move(next);
    }
    return res;
}

GmmFit gmm_fit(const Matrix &x, std::size_t k, Rng &rng, GmmConfig config) {
    const auto d = static_cast<std::size_t>(x.cols());
    if (static_cast<std::size_t>(x.rows()) <= k * (d + 1)) {
        throw std::invalid_argument("gmm_fit: need more than k (d + 1) samples");
    }
    const auto km = kmeans(x, k, rng);

    GmmFit fit;
    auto &mix = fit.mixture;
    mix.weights = Vector::Zero(static_cast<Eigen::Index>(k));
    mix.means.assign(k, Vector::Zero(x.cols()));
    mix.covariances.assign(k, Matrix::Zero(x.cols(), x.cols()));
    Matrix resp = Matrix::Zero(x.rows(), static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        resp(i, km.assignment[static_cast<std::size_t>(i)]) = 1.0;
    }

    const auto m_step = [&](const Matrix &r) {
        for (std::size_t c = 0; c < k; ++c) {
            const auto ci = static_cast<Eigen::Index>(c);
            const double nk = std::max(r.col(ci).sum(), 10 * std::numeric_limits<double>::min());
            mix.weights(ci) = nk / static_cast<double>(x.rows());
            mix.means[c] = (x.transpose() * r.col(ci)) / nk;
            const Matrix centered = x.rowwise() - mix.means[c].transpose();
            mix.covariances[c] =
                centered.transpose() * r.col(ci).asDiagonal() * centered / nk;
        }
    };

    m_step(resp);
    for (fit.iterations = 0; fit.iterations < config.max_iterations; ++fit.iterations) {
        const auto comps = factor(mix, config.regularization, &fit.regularized);
        const double ll = normalize_rows(log_joint(mix, comps, x), resp);
        fit.log_likelihood.push_back(ll);
        const auto t = fit.log_likelihood.size();
        if (t >= 2 && ll - fit.log_likelihood[t - 2] < config.tolerance) {
            fit.converged = true;
            break;
        }
        m_step(resp);
    }
    // Leave the mixture factorizable for prediction.
    factor(mix, config.regularization, &fit.regularized);
    return fit;
}

Matrix gmm_responsibilities(const GaussianMixture &mixture, const Matrix &x) {
    GaussianMixture mix = mixture;
    const auto comps = factor(mix, 1e-6, nullptr);
    Matrix resp;
    normalize_rows(log_joint(mix, comps, x), resp);
    return resp;
}

std::vector<int> gmm_predict(const GaussianMixture &mixture, const Matrix &x) {
    const Matrix resp = gmm_responsibilities(mixture, x);
    std::vector<int> out(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        Eigen::Index best = 0;
        resp.row(i).maxCoeff(&best);
        out[static_cast<std::size_t>(i)] = static_cast<int>(best);
    }
    return out;
}

double gmm_log_likelihood(const GaussianMixture &mixture, const Matrix &x) {
    GaussianMixture mix = mixture;
    const auto comps = factor(mix, 1e-6, nullptr);
    Matrix resp;
    return normalize_rows(log_joint(mix, comps, x), resp);
}

} // namespace hqa::analysis

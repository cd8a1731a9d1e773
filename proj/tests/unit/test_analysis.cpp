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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/QR>

#include "hqa/analysis/classify.hpp"
#include "hqa/analysis/cluster.hpp"
#include "hqa/analysis/latent_set.hpp"
#include "hqa/analysis/metrics.hpp"
#include "hqa/analysis/pca.hpp"

using namespace hqa;
using namespace hqa::analysis;
using Catch::Matchers::WithinAbs;

namespace {

Matrix gaussian_cloud(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    std::normal_distribution<double> g;
    Matrix x(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            x(i, j) = g(rng);
        }
    }
    return x;
}

Matrix random_rotation(Eigen::Index d, Rng &rng) {
    const Eigen::HouseholderQR<Matrix> qr(gaussian_cloud(d, d, rng));
    return qr.householderQ();
}

/// Two anisotropic blobs, labels 0 and 1, alternating rows.
Matrix two_blobs(std::size_t per_class, double gap, Rng &rng, std::vector<int> &labels) {
    std::normal_distribution<double> g;
    Matrix x(static_cast<Eigen::Index>(2 * per_class), 2);
    labels.clear();
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const int c = static_cast<int>(i % 2);
        const double sx = c == 0 ? 2.0 : 0.5;
        const double sy = c == 0 ? 0.3 : 1.5;
        x(static_cast<Eigen::Index>(i), 0) = sx * g(rng) + (c == 0 ? -gap : gap);
        x(static_cast<Eigen::Index>(i), 1) = sy * g(rng);
        labels.push_back(c);
    }
    return x;
}

/// Points on two concentric circles with radii 2.2 and 2.5. Close radii keep any
/// half-plane from capturing more than a thin cap of the outer ring.
Matrix rings(std::size_t per_class, Rng &rng, std::vector<int> &labels) {
    std::normal_distribution<double> g(0.0, 0.03);
    Matrix x(static_cast<Eigen::Index>(2 * per_class), 2);
    labels.clear();
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const int c = static_cast<int>(i % 2);
        const double r = (c == 0 ? 2.2 : 2.5) + g(rng);
        const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        x(static_cast<Eigen::Index>(i), 0) = r * std::cos(t);
        x(static_cast<Eigen::Index>(i), 1) = r * std::sin(t);
        labels.push_back(c);
    }
    return x;
}

} // namespace

TEST_CASE("PCA of points on a line", "[analysis][pca]") {
    Matrix x(5, 2);
    x << 0, 0, 1, 2, 2, 4, 3, 6, -1, -2;
    const auto m = pca_fit(x);
    CHECK_THAT(m.explained_variance(0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(m.explained_variance(1), WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(m.components(0, 1) / m.components(0, 0)), WithinAbs(2.0, 1e-12));
}

TEST_CASE("isotropic cloud splits variance evenly", "[analysis][pca]") {
    Rng rng(1);
    const auto m = pca_fit(gaussian_cloud(20000, 4, rng));
    for (Eigen::Index i = 0; i < 4; ++i) {
        CHECK_THAT(m.explained_variance(i), WithinAbs(0.25, 0.02));
    }
}

TEST_CASE("PCA invariants", "[analysis][pca][property]") {
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = gaussian_cloud(50, 6, rng) * gaussian_cloud(6, 6, rng);
        const auto m = pca_fit(x);
        const Matrix gram = m.components * m.components.transpose();
        CHECK((gram - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(m.explained_variance.sum() <= 1.0 + 1e-12);
        for (Eigen::Index i = 1; i < 6; ++i) {
            CHECK(m.explained_variance(i) <= m.explained_variance(i - 1));
        }
        const Matrix back = pca_inverse(m, pca_project(m, x, 6));
        CHECK((back - x).cwiseAbs().maxCoeff() < 1e-8);
        // Project, reconstruct, project again.
        const Matrix p2 = pca_project(m, x, 2);
        CHECK((pca_project(m, pca_inverse(m, p2), 2) - p2).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("rank-r data has r nonzero variance ratios", "[analysis][pca][property]") {
    Rng rng(3);
    for (Eigen::Index r = 1; r <= 4; ++r) {
        const Matrix x = gaussian_cloud(40, r, rng) * gaussian_cloud(r, 6, rng);
        const auto m = pca_fit(x);
        for (Eigen::Index i = 0; i < 6; ++i) {
            if (i < r) {
                CHECK(m.explained_variance(i) > 1e-8);
            } else {
                CHECK(m.explained_variance(i) < 1e-8);
            }
        }
    }
}

TEST_CASE("component slices", "[analysis][pca]") {
    Rng rng(4);
    const Matrix x = gaussian_cloud(30, 5, rng);
    const auto m = pca_fit(x);
    CHECK((component_slice(m, x, ComponentSlice::all()) - x).cwiseAbs().maxCoeff() == 0.0);
    const Matrix full = component_slice(m, x, ComponentSlice::top(5));
    CHECK((full - pca_project(m, x, 5)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(component_slice(m, x, ComponentSlice::minor(0)).cols() == 0);
    const Matrix minor = component_slice(m, x, ComponentSlice::minor(2));
    CHECK((minor - full.rightCols(2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS(component_slice(m, x, ComponentSlice::minor(6)));
    CHECK_THROWS(pca_fit(Matrix::Zero(1, 3)));
}

TEST_CASE("kmeans finds the optimal bipartition of two blobs", "[analysis][kmeans]") {
    Rng rng(5);
    std::vector<int> labels;
    const Matrix x = two_blobs(6, 6.0, rng, labels);
    // Brute force over all 2^12 bipartitions for the minimal within-cluster sum of squares.
    const std::size_t k = 12;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_assign;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
        std::vector<int> a(k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = static_cast<int>((mask >> i) & 1U);
        }
        Matrix c = Matrix::Zero(2, 2);
        Vector counts = Vector::Zero(2);
        for (std::size_t i = 0; i < k; ++i) {
            c.row(a[i]) += x.row(static_cast<Eigen::Index>(i));
            counts(a[i]) += 1.0;
        }
        c.row(0) /= counts(0);
        c.row(1) /= counts(1);
        const double d = kmeans_distortion(x, a, c);
        if (d < best) {
            best = d;
            best_assign = a;
        }
    }
    CHECK(clustering_accuracy(best_assign, labels) == 1.0);
    Rng krng(1);
    const auto res = kmeans(x, 2, krng);
    CHECK(clustering_accuracy(res.assignment, best_assign) == 1.0);
    CHECK_THAT(res.distortion.back(), WithinAbs(best, 1e-9));
}

TEST_CASE("kmeans with one centroid per point", "[analysis][kmeans]") {
    Rng rng(6);
    const Matrix x = gaussian_cloud(7, 3, rng);
    const auto res = kmeans(x, 7, rng);
    CHECK(res.distortion.back() == 0.0);
    CHECK_THROWS(kmeans(x, 8, rng));
    CHECK_THROWS(kmeans(x, 0, rng));
}

TEST_CASE("duplicate rows stay together and distortion never rises", "[analysis][kmeans][property]") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix x = gaussian_cloud(40, 3, rng);
        x.row(5) = x.row(17);
        x.row(30) = x.row(17);
        const auto res = kmeans(x, 4, rng);
        CHECK(res.assignment[5] == res.assignment[17]);
        CHECK(res.assignment[30] == res.assignment[17]);
        for (std::size_t t = 1; t < res.distortion.size(); ++t) {
            CHECK(res.distortion[t] <= res.distortion[t - 1] + 1e-12);
        }
    }
}

TEST_CASE("empty clusters are re-seeded", "[analysis][kmeans]") {
    // Many identical points and one distinct point: with k = 3 at least one centroid
    // seeded on a duplicate loses its points.
    Matrix x = Matrix::Zero(10, 1);
    x(9, 0) = 5.0;
    x(8, 0) = 2.0;
    Rng rng(1);
    const auto res = kmeans(x, 3, rng);
    CHECK(res.distortion.back() == 0.0);
}

TEST_CASE("single-component mixture is the ML Gaussian", "[analysis][gmm]") {
    Rng rng(8);
    const Matrix x = gaussian_cloud(500, 3, rng) * gaussian_cloud(3, 3, rng);
    const auto fit = gmm_fit(x, 1, rng);
    const Vector mean = x.colwise().mean();
    const Matrix centered = x.rowwise() - mean.transpose();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(x.rows());
    CHECK((fit.mixture.means[0] - mean).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((fit.mixture.covariances[0] - cov).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THAT(fit.mixture.weights(0), WithinAbs(1.0, 1e-14));
}

TEST_CASE("mixture separates anisotropic blobs", "[analysis][gmm]") {
    Rng rng(9);
    std::vector<int> labels;
    const Matrix x = two_blobs(300, 4.0, rng, labels);
    const auto fit = gmm_fit(x, 2, rng);
    CHECK(fit.converged);
    CHECK(clustering_accuracy(gmm_predict(fit.mixture, x), labels) >= 0.99);
    CHECK_THAT(gmm_log_likelihood(fit.mixture, x), WithinAbs(fit.log_likelihood.back(), 1e-3));
    CHECK_THROWS(gmm_fit(x.topRows(5), 2, rng));
}

TEST_CASE("EM log-likelihood never decreases", "[analysis][gmm][property]") {
    Rng rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = gaussian_cloud(200, 3, rng);
        const auto fit = gmm_fit(x, 3, rng);
        for (std::size_t t = 1; t < fit.log_likelihood.size(); ++t) {
            CHECK(fit.log_likelihood[t] >= fit.log_likelihood[t - 1] - 1e-12);
        }
    }
}

TEST_CASE("singular covariance is regularized", "[analysis][gmm]") {
    Rng rng(11);
    Matrix x(60, 2);
    for (Eigen::Index i = 0; i < 60; ++i) {
        const double t = static_cast<double>(i);
        x(i, 0) = t;
        x(i, 1) = 2.0 * t; // rank one
    }
    const auto fit = gmm_fit(x, 1, rng);
    CHECK(fit.regularized > 0);
    CHECK(std::isfinite(fit.log_likelihood.back()));
}

TEST_CASE("logistic regression separates separable data", "[analysis][logreg]") {
    Rng rng(12);
    std::vector<int> labels;
    const Matrix x = two_blobs(50, 6.0, rng, labels);
    const auto m = logreg_fit(x, labels);
    CHECK(m.converged);
    CHECK(classification_accuracy(logreg_predict(m, x), labels) == 1.0);
    CHECK(logreg_gradient(x, labels, m.weights, m.bias, 1e-4).norm() < 1e-6);
}

TEST_CASE("logistic regression cannot separate XOR", "[analysis][logreg]") {
    Rng rng(13);
    std::normal_distribution<double> g(0.0, 0.1);
    Matrix x(400, 2);
    std::vector<int> labels;
    for (Eigen::Index i = 0; i < 400; ++i) {
        const double a = (i & 1) ? 1.0 : -1.0;
        const double b = (i & 2) ? 1.0 : -1.0;
        x(i, 0) = a + g(rng);
        x(i, 1) = b + g(rng);
        labels.push_back(a * b > 0 ? 1 : 0);
    }
    const auto m = logreg_fit(x, labels);
    CHECK_THAT(classification_accuracy(logreg_predict(m, x), labels), WithinAbs(0.5, 0.1));
}

TEST_CASE("logistic objective gradient matches finite differences", "[analysis][logreg]") {
    Rng rng(14);
    const Matrix x = gaussian_cloud(30, 3, rng);
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
        y.push_back(i % 3 == 0 ? 1 : 0);
    }
    Vector w(3);
    w << 0.4, -0.3, 1.2;
    const double b = 0.2;
    const double l2 = 0.05;
    const Vector g = logreg_gradient(x, y, w, b, l2);
    const double h = 1e-6;
    for (Eigen::Index k = 0; k < 3; ++k) {
        Vector wp = w;
        Vector wm = w;
        wp(k) += h;
        wm(k) -= h;
        CHECK_THAT(g(k), WithinAbs((logreg_objective(x, y, wp, b, l2) -
                                    logreg_objective(x, y, wm, b, l2)) / (2 * h), 1e-8));
    }
    CHECK_THAT(g(3), WithinAbs((logreg_objective(x, y, w, b + h, l2) -
                                logreg_objective(x, y, w, b - h, l2)) / (2 * h), 1e-8));
    CHECK_THROWS(logreg_fit(x, std::vector<int>(30, 2)));
}

TEST_CASE("linear SVM separates separable data", "[analysis][svm]") {
    Rng rng(15);
    std::vector<int> labels;
    const Matrix x = two_blobs(40, 6.0, rng, labels);
    const auto y = to_pm1(labels);
    SvmConfig cfg;
    cfg.c = 100.0;
    const auto m = svm_fit(x, y, Kernel::linear(), cfg);
    CHECK(m.converged);
    CHECK(classification_accuracy(svm_predict(m, x), y) == 1.0);
    const Vector f = svm_decision(m, x);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        CHECK(f(i) * y[static_cast<std::size_t>(i)] > 0.0);
    }
}

TEST_CASE("RBF kernel separates rings where the linear one cannot", "[analysis][svm]") {
    Rng rng(16);
    std::vector<int> labels;
    const Matrix x = rings(300, rng, labels);
    const auto y = to_pm1(labels);
    const auto rbf = svm_fit(x, y, Kernel::rbf(5.0), {10.0});
    const auto lin = svm_fit(x, y, Kernel::linear());
    CHECK(classification_accuracy(svm_predict(rbf, x), y) >= 0.95);
    CHECK(classification_accuracy(svm_predict(lin, x), y) <= 0.6);
}

TEST_CASE("SVM duals are feasible", "[analysis][svm][property]") {
    Rng rng(17);
    for (const auto &k : {Kernel::linear(), Kernel::poly(3, 0.5), Kernel::rbf(2.0)}) {
        std::vector<int> labels;
        const Matrix x = two_blobs(60, 1.0, rng, labels);
        const auto y = to_pm1(labels);
        SvmConfig cfg;
        cfg.c = 0.7;
        const auto m = svm_fit(x, y, k, cfg);
        double balance = 0.0;
        for (Eigen::Index i = 0; i < m.duals.size(); ++i) {
            CHECK(m.duals(i) >= 0.0);
            CHECK(m.duals(i) <= cfg.c);
            balance += m.duals(i) * y[static_cast<std::size_t>(i)];
        }
        CHECK(std::abs(balance) < 1e-6);
    }
}

TEST_CASE("polynomial kernel form", "[analysis][svm]") {
    Vector a(2);
    Vector b(2);
    a << 1.0, 2.0;
    b << -0.5, 1.0;
    CHECK_THAT(Kernel::poly(4, 2.0)(a, b), WithinAbs(std::pow(2.0 * 1.5 + 1.0, 4), 1e-12));
    CHECK_THAT(Kernel::rbf(0.5)(a, b), WithinAbs(std::exp(-0.5 * 3.25), 1e-15));
    CHECK_THAT(Kernel::linear()(a, b), WithinAbs(1.5, 1e-15));
}

TEST_CASE("RBF SVM and logistic regression ignore rotations", "[analysis][property]") {
    Rng rng(18);
    std::vector<int> labels;
    Matrix x = rings(60, rng, labels);
    x.conservativeResize(Eigen::NoChange, 3);
    x.col(2) = gaussian_cloud(x.rows(), 1, rng);
    const Matrix rot = x * random_rotation(3, rng);
    const auto y = to_pm1(labels);
    const auto a = svm_predict(svm_fit(x, y, Kernel::rbf(1.0)), x);
    const auto b = svm_predict(svm_fit(rot, y, Kernel::rbf(1.0)), rot);
    CHECK(classification_accuracy(a, y) == classification_accuracy(b, y));
    const auto la = logreg_predict(logreg_fit(x, labels), x);
    const auto lb = logreg_predict(logreg_fit(rot, labels), rot);
    CHECK(classification_accuracy(la, labels) == classification_accuracy(lb, labels));
}

TEST_CASE("clustering accuracy examples", "[analysis][metrics]") {
    CHECK(clustering_accuracy({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0);
    CHECK(clustering_accuracy({1, 1, 0, 0}, {1, 1, 0, 0}) == 1.0);
    CHECK(clustering_accuracy({0, 1, 0, 1}, {0, 0, 1, 1}) == 0.5);
    CHECK(clustering_accuracy({2, 2, 0, 1}, {0, 0, 1, 2}) == 1.0);
    CHECK_THROWS(clustering_accuracy({0, 1}, {0}));
    std::vector<int> many(9);
    std::iota(many.begin(), many.end(), 0);
    CHECK_THROWS(clustering_accuracy(many, many));
}

TEST_CASE("clustering accuracy is permutation invariant and near one half for noise", "[analysis][metrics][property]") {
    Rng rng(19);
    std::vector<int> a(1000);
    std::vector<int> y(1000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<int>(rng() % 3);
        y[i] = static_cast<int>(rng() % 3);
    }
    const double base = clustering_accuracy(a, y);
    std::vector<int> perm = {2, 0, 1};
    std::vector<int> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        b[i] = perm[static_cast<std::size_t>(a[i])];
    }
    CHECK(clustering_accuracy(b, y) == base);

    std::vector<int> coin(1000);
    std::vector<int> half(1000);
    for (std::size_t i = 0; i < coin.size(); ++i) {
        coin[i] = static_cast<int>(rng() % 2);
        half[i] = static_cast<int>(i % 2);
    }
    CHECK_THAT(clustering_accuracy(coin, half), WithinAbs(0.5, 0.05));
}

TEST_CASE("classification accuracy and rank correlation", "[analysis][metrics]") {
    CHECK(classification_accuracy({1, 0, 1, 1}, {1, 1, 1, 0}) == 0.5);
    CHECK_THAT(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), WithinAbs(1.0, 1e-15));
    CHECK_THAT(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(spearman({1, 2, 3, 4, 5}, {1, 4, 9, 16, 25}), WithinAbs(1.0, 1e-15));
    // Ties take the average rank.
    CHECK_THAT(spearman({1, 2, 2, 3}, {1, 2, 3, 4}), WithinAbs(0.9486832980505138, 1e-12));
}

TEST_CASE("latent table round-trip", "[analysis]") {
    Rng rng(20);
    data::DatasetConfig cfg;
    cfg.kind = data::DatasetKind::SkewBoth;
    cfg.num_qubits = 3;
    const auto items = data::build_training_set(cfg, 10, rng);
    const auto model = model::HqaModel::create({3, 4, 2, 2}, rng);
    const auto set = encode_items(model, items);
    REQUIRE(set.fully_labeled());
    const auto back = latent_set_from_table(table::from_string(table::to_string(latent_table(set))));
    CHECK(back.x == set.x);
    CHECK(back.label_vector() == set.label_vector());
    CHECK((set.x.cwiseAbs().array() <= 1.0).all());
}

TEST_CASE("train/test split", "[analysis]") {
    Rng rng(21);
    const auto s = train_test_split(1600, 0.3, rng);
    CHECK(s.test.size() == 480);
    CHECK(s.train.size() == 1120);
    std::vector<std::size_t> all = s.train;
    all.insert(all.end(), s.test.begin(), s.test.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i] == i);
    }
}

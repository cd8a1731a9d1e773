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

#include "hqa/analysis/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hqa::analysis {

namespace {

void check_binary(const Matrix &x, const std::vector<int> &y, int lo, int hi) {
    if (static_cast<std::size_t>(x.rows()) != y.size()) {
        throw std::invalid_argument("classifier: row count and label count differ");
    }
    if (y.empty()) {
        throw std::invalid_argument("classifier: empty training set");
    }
    for (int label : y) {
        if (label != lo && label != hi) {
            throw std::invalid_argument("classifier: labels must be " + std::to_string(lo) +
                                        " or " + std::to_string(hi));
        }
    }
}

/// log(1 + e^z) without overflow.
double softplus(double z) {
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

} // namespace

double logreg_objective(const Matrix &x, const std::vector<int> &y, const Vector &weights,
                        double bias, double l2) {
    const Vector z = (x * weights).array() + bias;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        // y z - log(1 + e^z)
        ll += y[static_cast<std::size_t>(i)] * z(i) - softplus(z(i));
    }
    return ll / static_cast<double>(z.size()) - 0.5 * l2 * weights.squaredNorm();
}

Vector logreg_gradient(const Matrix &x, const std::vector<int> &y, const Vector &weights,
                       double bias, double l2) {
    const Vector z = (x * weights).array() + bias;
    Vector r(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        r(i) = y[static_cast<std::size_t>(i)] - sigmoid(z(i));
    }
    const double inv = 1.0 / static_cast<double>(z.size());
    Vector g(weights.size() + 1);
    g.head(weights.size()) = inv * (x.transpose() * r) - l2 * weights;
    g(weights.size()) = inv * r.sum();
    return g;
}

LogRegModel logreg_fit(const Matrix &x, const std::vector<int> &y, LogRegConfig config) {
    check_binary(x, y, 0, 1);
    const Eigen::Index d = x.cols();
    Vector p = Vector::Zero(d + 1);
    const auto objective = [&](const Vector &q) {
        return logreg_objective(x, y, q.head(d), q(d), config.l2);
    };
    const auto gradient = [&](const Vector &q) {
        return logreg_gradient(x, y, q.head(d), q(d), config.l2);
    };

    LogRegModel out;
    Vector g = gradient(p);
    double f = objective(p);
    double step = 1.0;
    Vector p_prev;
    Vector g_prev;
    for (out.iterations = 0; out.iterations < config.max_iterations; ++out.iterations) {
        out.gradient_norm = g.norm();
        if (out.gradient_norm < config.tolerance) {
            out.converged = true;
            break;
        }
        if (out.iterations > 0) {
            const Vector s = p - p_prev;
            const Vector dg = g_prev - g; // ascent: negate to get a positive curvature
            const double sy = s.dot(dg);
            step = sy > 0.0 ? s.squaredNorm() / sy : 1.0;
        }
        // Backtrack until the objective does not decrease (Armijo on ascent).
        Vector trial;
        double f_trial = 0.0;
        for (int k = 0; k < 60; ++k) {
            trial = p + step * g;
            f_trial = objective(trial);
            if (f_trial >= f + 1e-4 * step * g.squaredNorm()) {
                break;
            }
            step *= 0.5;
        }
        p_prev = p;
        g_prev = g;
        p = trial;
        f = f_trial;
        g = gradient(p);
    }
    out.weights = p.head(d);
    out.bias = p(d);
    return out;
}

Vector logreg_probability(const LogRegModel &model, const Matrix &x) {
    const Vector z = (x * model.weights).array() + model.bias;
    return z.unaryExpr([](double t) { return sigmoid(t); });
}

std::vector<int> logreg_predict(const LogRegModel &model, const Matrix &x) {
    const Vector z = (x * model.weights).array() + model.bias;
    std::vector<int> out(static_cast<std::size_t>(z.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        out[static_cast<std::size_t>(i)] = z(i) > 0.0 ? 1 : 0;
    }
    return out;
}

double Kernel::operator()(const Vector &a, const Vector &b) const {
    switch (kind) {
    case KernelKind::Linear:
        return a.dot(b);
    case KernelKind::Poly:
        return std::pow(gamma * a.dot(b) + 1.0, degree);
    case KernelKind::Rbf:
        return std::exp(-gamma * (a - b).squaredNorm());
    }
    return 0.0;
}

std::string kernel_name(const Kernel &k) {
    switch (k.kind) {
    case KernelKind::Linear:
        return "linear";
    case KernelKind::Poly:
        return "poly";
    case KernelKind::Rbf:
        return "rbf";
    }
    return "unknown";
}

SvmModel svm_fit(const Matrix &x, const std::vector<int> &y, const Kernel &kernel,
                 SvmConfig config) {
    check_binary(x, y, -1, 1);
    if (!(config.c > 0.0)) {
        throw std::invalid_argument("svm_fit: C must be > 0");
    }
    const Eigen::Index n = x.rows();
    Matrix q(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double k = kernel(x.row(i).transpose(), x.row(j).transpose());
            q(i, j) = q(j, i) = y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * k;
        }
    }
    if (!q.allFinite()) {
        throw std::runtime_error("svm_fit: kernel matrix is not finite");
    }
    const double c = config.c;
    const auto yi = [&](Eigen::Index i) { return static_cast<double>(y[static_cast<std::size_t>(i)]); };
    const auto in_up = [&](Eigen::Index t, const Vector &a) {
        return (yi(t) > 0 && a(t) < c) || (yi(t) < 0 && a(t) > 0);
    };
    const auto in_low = [&](Eigen::Index t, const Vector &a) {
        return (yi(t) > 0 && a(t) > 0) || (yi(t) < 0 && a(t) < c);
    };

    // Dual: min 1/2 a^T Q a - e^T a, 0 <= a <= C, y^T a = 0. grad = Q a - e.
    Vector a = Vector::Zero(n);
    Vector grad = Vector::Constant(n, -1.0);
    SvmModel out;
    out.kernel = kernel;
    out.c = c;
    constexpr double kTau = 1e-12;
    for (out.iterations = 0; out.iterations < config.max_iterations; ++out.iterations) {
        Eigen::Index i = -1;
        Eigen::Index j = -1;
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < n; ++t) {
            const double v = -yi(t) * grad(t);
            if (in_up(t, a) && v > g_max) {
                g_max = v;
                i = t;
            }
            if (in_low(t, a) && v < g_min) {
                g_min = v;
                j = t;
            }
        }
        if (i < 0 || j < 0 || g_max - g_min < config.tolerance) {
            out.converged = true;
            break;
        }
        const double old_ai = a(i);
        const double old_aj = a(j);
        if (yi(i) != yi(j)) {
            double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
            quad = quad > 0.0 ? quad : kTau;
            const double delta = (-grad(i) - grad(j)) / quad;
            const double diff = a(i) - a(j);
            a(i) += delta;
            a(j) += delta;
            if (diff > 0.0) {
                if (a(j) < 0.0) {
                    a(j) = 0.0;
                    a(i) = diff;
                }
            } else if (a(i) < 0.0) {
                a(i) = 0.0;
                a(j) = -diff;
            }
            if (diff > 0.0) {
                if (a(i) > c) {
                    a(i) = c;
                    a(j) = c - diff;
                }
            } else if (a(j) > c) {
                a(j) = c;
                a(i) = c + diff;
            }
        } else {
            double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
            quad = quad > 0.0 ? quad : kTau;
            const double delta = (grad(i) - grad(j)) / quad;
            const double sum = a(i) + a(j);
            a(i) -= delta;
            a(j) += delta;
            if (sum > c) {
                if (a(i) > c) {
                    a(i) = c;
                    a(j) = sum - c;
                }
            } else if (a(j) < 0.0) {
                a(j) = 0.0;
                a(i) = sum;
            }
            if (sum > c) {
                if (a(j) > c) {
                    a(j) = c;
                    a(i) = sum - c;
                }
            } else if (a(i) < 0.0) {
                a(i) = 0.0;
                a(j) = sum;
            }
        }
        const double di = a(i) - old_ai;
        const double dj = a(j) - old_aj;
        grad += q.col(i) * di + q.col(j) * dj;
    }

    // b = -rho; rho averages y_i grad_i over free vectors, else the midpoint of the bounds.
    double sum_free = 0.0;
    std::size_t free_count = 0;
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
        const double yg = yi(t) * grad(t);
        if (a(t) > 0.0 && a(t) < c) {
            sum_free += yg;
            ++free_count;
        } else if ((a(t) >= c && yi(t) < 0) || (a(t) <= 0.0 && yi(t) > 0)) {
            ub = std::min(ub, yg);
        } else {
            lb = std::max(lb, yg);
        }
    }
    const double rho = free_count > 0 ? sum_free / static_cast<double>(free_count)
                                      : 0.5 * (ub + lb);
    out.bias = -rho;
    out.duals = a;
    out.labels = y;
    std::vector<Eigen::Index> sv;
    for (Eigen::Index t = 0; t < n; ++t) {
        if (a(t) > 0.0) {
            sv.push_back(t);
        }
    }
    out.support.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
    out.support_coef.resize(static_cast<Eigen::Index>(sv.size()));
    for (std::size_t k = 0; k < sv.size(); ++k) {
        out.support.row(static_cast<Eigen::Index>(k)) = x.row(sv[k]);
        out.support_coef(static_cast<Eigen::Index>(k)) = a(sv[k]) * yi(sv[k]);
    }
    return out;
}

Vector svm_decision(const SvmModel &model, const Matrix &x) {
    Vector f = Vector::Constant(x.rows(), model.bias);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index s = 0; s < model.support.rows(); ++s) {
            f(i) += model.support_coef(s) *
                    model.kernel(model.support.row(s).transpose(), x.row(i).transpose());
        }
    }
    return f;
}

std::vector<int> svm_predict(const SvmModel &model, const Matrix &x) {
    const Vector f = svm_decision(model, x);
    std::vector<int> out(static_cast<std::size_t>(f.size()));
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        out[static_cast<std::size_t>(i)] = f(i) >= 0.0 ? 1 : -1;
    }
    return out;
}

std::vector<int> to_pm1(const std::vector<int> &labels01) {
    std::vector<int> out(labels01.size());
    std::transform(labels01.begin(), labels01.end(), out.begin(),
                   [](int l) { return l == 0 ? -1 : 1; });
    return out;
}

std::vector<int> to_01(const std::vector<int> &labels_pm1) {
    std::vector<int> out(labels_pm1.size());
    std::transform(labels_pm1.begin(), labels_pm1.end(), out.begin(),
                   [](int l) { return l > 0 ? 1 : 0; });
    return out;
}

} // namespace hqa::analysis

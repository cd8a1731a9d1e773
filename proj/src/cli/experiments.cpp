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

#include "hqa/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "hqa/analysis/classify.hpp"
#include "hqa/analysis/cluster.hpp"
#include "hqa/analysis/metrics.hpp"
#include "hqa/analysis/pca.hpp"
#include "hqa/common/error.hpp"

namespace hqa::cli {

namespace {

using nlohmann::json;
using table::format_double;

constexpr std::size_t kGaussianQubits = 5;
constexpr std::size_t kSkewQubits = 7;
constexpr std::size_t kLatent = 12;

void progress(const std::string &id, const std::string &message) {
    std::clog << "[" << id << "] " << message << '\n';
}

ExperimentConfig gaussian_config(const ExperimentConfig &base, std::size_t v,
                                 data::DatasetKind kind) {
    ExperimentConfig c = base;
    c.shape.input_qubits = kGaussianQubits;
    c.shape.latent_dim = v;
    c.source.data.kind = kind;
    c.source.data.num_qubits = kGaussianQubits;
    if (c.analysis.slice.count > v) {
        c.analysis.slice = analysis::ComponentSlice::minor(std::min<std::size_t>(4, v));
    }
    c.analysis.pca_dims = std::min(c.analysis.pca_dims, v);
    c.validate();
    return c;
}

std::vector<sim::StateVector> states_of(const std::vector<data::DatasetItem> &items) {
    std::vector<sim::StateVector> out;
    out.reserve(items.size());
    for (const auto &item : items) {
        out.push_back(item.make_state());
    }
    return out;
}

std::vector<double> column_of(const Matrix &m, Eigen::Index c) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out[static_cast<std::size_t>(r)] = m(r, c);
    }
    return out;
}

table::Table new_table(const ExperimentConfig &config, std::vector<std::string> columns) {
    table::Table t;
    t.columns = std::move(columns);
    stamp(t, config);
    return t;
}

std::string role_name(bool both) { return both ? "both" : "smooth_only"; }

optim::TrainResult train_member0(const ExperimentConfig &c) {
    return std::move(optim::train_ensemble(c.shape, c.source, c.train, 1).front());
}

json history_json(const optim::LossHistory &h, std::size_t bin_width) {
    return json(h.binned(bin_width));
}

} // namespace

std::uint64_t tagged_seed(const ExperimentConfig &config, SeedTag tag, std::uint64_t extra) {
    return derive_seed(derive_seed(config.seed, static_cast<std::uint64_t>(tag)), extra);
}

void stamp(table::Table &t, const ExperimentConfig &config) {
    t.meta["config_hash"] = config_hash(config);
    t.meta["experiment"] = config.experiment;
    t.meta["seed"] = std::to_string(config.seed);
}

std::string json_text(const json &j) { return j.dump(2) + "\n"; }

void write_figure(const FigureResult &result, const std::string &dir) {
    for (const auto &[name, t] : result.tables) {
        table::write_file(dir + "/" + name + ".tsv", t);
    }
    table::write_text(dir + "/metrics.json", json_text(result.metrics));
}

std::vector<data::DatasetItem> gaussian_test_items(const ExperimentConfig &config,
                                                   std::size_t count) {
    data::DatasetConfig d = config.source.data.with_test_ranges();
    d.kind = data::DatasetKind::GaussianGrid;
    Rng rng(tagged_seed(config, SeedTag::TestSet));
    std::vector<data::DatasetItem> items;
    items.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        items.push_back(data::sample_item(d, rng));
    }
    return items;
}

std::vector<data::DatasetItem> skew_evaluation_items(const ExperimentConfig &config,
                                                     std::size_t count) {
    data::DatasetConfig d = config.source.data;
    d.kind = data::DatasetKind::SkewBoth;
    Rng rng(tagged_seed(config, SeedTag::EvaluationSet));
    return data::build_training_set(d, count, rng);
}

double mean_loss(const model::HqaModel &model, const std::vector<data::DatasetItem> &items) {
    const auto states = states_of(items);
    return model::loss_batch(model, states);
}

FigureResult figure_loss_vs_latent(const ExperimentConfig &base,
                                   const std::vector<std::size_t> &latent_dims) {
    FigureResult out;
    out.id = "fig3";
    const ExperimentConfig first =
        gaussian_config(base, latent_dims.front(), data::DatasetKind::GaussianGrid);
    auto binned = new_table(first, {"v", "bin", "iteration_end", "mean_loss"});
    auto members = new_table(first, {"v", "member", "bin", "loss"});
    auto tests = new_table(first, {"v", "member", "test_loss"});
    auto summary = new_table(first, {"v", "final_binned_loss", "mean_test_loss", "std_test_loss"});
    const auto test_items = gaussian_test_items(first, base.test_size);
    const auto test_states = states_of(test_items);
    out.metrics["test_size"] = test_items.size();
    out.metrics["ensemble"] = base.ensemble;
    for (const auto v : latent_dims) {
        const ExperimentConfig c = gaussian_config(base, v, data::DatasetKind::GaussianGrid);
        progress(out.id, "training v=" + std::to_string(v) + " x" + std::to_string(c.ensemble));
        const auto results = optim::train_ensemble(c.shape, c.source, c.train, c.ensemble);
        const auto mean = optim::mean_history(results).binned(c.train.bin_width);
        const std::size_t iterations = results.front().history.per_iteration.size();
        for (std::size_t b = 0; b < mean.size(); ++b) {
            const std::size_t end = std::min(iterations, (b + 1) * c.train.bin_width);
            binned.rows.push_back({std::to_string(v), std::to_string(b), std::to_string(end),
                                   format_double(mean[b])});
        }
        std::vector<double> losses;
        for (std::size_t m = 0; m < results.size(); ++m) {
            const auto h = results[m].history.binned(c.train.bin_width);
            for (std::size_t b = 0; b < h.size(); ++b) {
                members.rows.push_back({std::to_string(v), std::to_string(m), std::to_string(b),
                                        format_double(h[b])});
            }
            losses.push_back(model::loss_batch(results[m].model, test_states));
            tests.rows.push_back(
                {std::to_string(v), std::to_string(m), format_double(losses.back())});
        }
        double mu = 0.0;
        for (const double l : losses) {
            mu += l;
        }
        mu /= static_cast<double>(losses.size());
        double var = 0.0;
        for (const double l : losses) {
            var += (l - mu) * (l - mu);
        }
        const double sd =
            losses.size() > 1 ? std::sqrt(var / static_cast<double>(losses.size() - 1)) : 0.0;
        summary.rows.push_back({std::to_string(v), format_double(mean.back()), format_double(mu),
                                format_double(sd)});
        auto &mv = out.metrics["latent"][std::to_string(v)];
        mv["final_binned_loss"] = mean.back();
        mv["binned_loss"] = mean;
        mv["mean_test_loss"] = mu;
        mv["std_test_loss"] = sd;
        mv["member_test_loss"] = losses;
    }
    out.tables = {{"training_loss", binned},
                  {"training_loss_members", members},
                  {"test_loss_members", tests},
                  {"summary", summary}};
    return out;
}

FigureResult figure_latent_grid(const ExperimentConfig &base) {
    FigureResult out;
    out.id = "fig5";
    const ExperimentConfig c = gaussian_config(base, kLatent, data::DatasetKind::GaussianGrid);
    progress(out.id, "training v=12");
    const auto result = train_member0(c);
    const auto &d = c.source.data;
    constexpr std::size_t kMeans = 17;
    constexpr std::size_t kStds = 8;
    std::vector<data::DatasetItem> items;
    for (std::size_t i = 0; i < kMeans; ++i) {
        for (std::size_t j = 0; j < kStds; ++j) {
            data::DatasetItem item;
            item.kind = data::DatasetKind::GaussianGrid;
            item.num_qubits = c.shape.input_qubits;
            item.mean = d.mean_min() + (d.mean_max() - d.mean_min()) * static_cast<double>(i) /
                                           static_cast<double>(kMeans - 1);
            item.std = d.std_max() * static_cast<double>(j + 1) / static_cast<double>(kStds);
            items.push_back(item);
        }
    }
    const auto set = analysis::encode_items(result.model, items);
    std::vector<std::string> cols = {"mean", "std"};
    for (std::size_t k = 0; k < c.shape.latent_dim; ++k) {
        cols.push_back("xi_" + std::to_string(k));
    }
    auto latent = new_table(c, cols);
    for (std::size_t r = 0; r < set.rows(); ++r) {
        std::vector<std::string> row = {format_double(items[r].mean), format_double(items[r].std)};
        for (Eigen::Index k = 0; k < set.x.cols(); ++k) {
            row.push_back(format_double(set.x(static_cast<Eigen::Index>(r), k)));
        }
        latent.rows.push_back(std::move(row));
    }
    const auto test_items = gaussian_test_items(c, c.test_size);
    out.metrics["binned_loss"] = history_json(result.history, c.train.bin_width);
    out.metrics["test_loss"] = mean_loss(result.model, test_items);
    out.metrics["test_size"] = test_items.size();
    out.tables = {{"latent_grid", latent}};
    return out;
}

FigureResult figure_latent_order(const ExperimentConfig &base, std::size_t test_count) {
    FigureResult out;
    out.id = "fig6";
    constexpr Eigen::Index kShown = 2;
    const ExperimentConfig grid = gaussian_config(base, kLatent, data::DatasetKind::GaussianGrid);
    const auto grid_items = gaussian_test_items(grid, test_count);
    for (const auto kind : {data::DatasetKind::GaussianMuOnly, data::DatasetKind::GaussianSigmaOnly}) {
        const ExperimentConfig c = gaussian_config(base, kLatent, kind);
        const std::string name = data::to_string(kind);
        progress(out.id, "training " + name);
        const auto result = train_member0(c);
        Rng rng(tagged_seed(c, SeedTag::TestSet, static_cast<std::uint64_t>(kind)));
        std::vector<data::DatasetItem> items;
        for (std::size_t i = 0; i < test_count; ++i) {
            items.push_back(data::sample_item(c.source.data, rng));
        }
        auto &m = out.metrics[name];
        m["binned_loss"] = history_json(result.history, c.train.bin_width);
        m["test_size"] = items.size();
        for (const bool widened : {false, true}) {
            const auto &use = widened ? grid_items : items;
            const auto set = analysis::encode_items(result.model, use);
            const auto pca = analysis::pca_fit(set.x);
            const Matrix coords = analysis::pca_project(pca, set.x, kShown);
            std::vector<double> mu;
            std::vector<double> sigma;
            for (const auto &item : use) {
                mu.push_back(item.mean);
                sigma.push_back(item.std);
            }
            json rho_mu = json::array();
            json rho_sigma = json::array();
            double best_mu = 0.0;
            double best_sigma = 0.0;
            for (Eigen::Index k = 0; k < kShown; ++k) {
                const auto pc = column_of(coords, k);
                const double rm = analysis::spearman(mu, pc);
                const double rs = analysis::spearman(sigma, pc);
                rho_mu.push_back(rm);
                rho_sigma.push_back(rs);
                best_mu = std::max(best_mu, std::abs(rm));
                best_sigma = std::max(best_sigma, std::abs(rs));
            }
            const Matrix every = analysis::pca_project(pca, set.x, set.x.cols());
            double any_mu = 0.0;
            double any_sigma = 0.0;
            for (Eigen::Index k = 0; k < every.cols(); ++k) {
                const auto pc = column_of(every, k);
                any_mu = std::max(any_mu, std::abs(analysis::spearman(mu, pc)));
                any_sigma = std::max(any_sigma, std::abs(analysis::spearman(sigma, pc)));
            }
            auto &slot = m[widened ? "grid_states" : "training_distribution"];
            slot["best_abs_spearman_mean_any_component"] = any_mu;
            slot["best_abs_spearman_std_any_component"] = any_sigma;
            slot["spearman_mean"] = rho_mu;
            slot["spearman_std"] = rho_sigma;
            slot["best_abs_spearman_mean"] = best_mu;
            slot["best_abs_spearman_std"] = best_sigma;
            slot["explained_variance"] =
                std::vector<double>(pca.explained_variance.data(),
                                    pca.explained_variance.data() + pca.explained_variance.size());
            if (!widened) {
                auto t = new_table(c, {"mean", "std", "pc_0", "pc_1"});
                for (std::size_t r = 0; r < use.size(); ++r) {
                    const auto ri = static_cast<Eigen::Index>(r);
                    t.rows.push_back({format_double(use[r].mean), format_double(use[r].std),
                                      format_double(coords(ri, 0)), format_double(coords(ri, 1))});
                }
                out.tables.emplace_back("principal_" + name, std::move(t));
            }
        }
    }
    return out;
}

ExperimentConfig skew_config(const ExperimentConfig &base) {
    ExperimentConfig c = base;
    c.shape.input_qubits = kSkewQubits;
    c.shape.latent_dim = kLatent;
    c.source.data.num_qubits = kSkewQubits;
    c.source.data.kind = data::DatasetKind::SkewBoth;
    c.validate();
    return c;
}

namespace {

void encode_skew(SkewModels &m) {
    m.smooth_only_latent = analysis::encode_items(m.smooth_only, m.items);
    m.both_latent = analysis::encode_items(m.both, m.items);
}

ExperimentConfig skew_role_config(const ExperimentConfig &c, bool both) {
    ExperimentConfig r = c;
    r.source.data.kind = both ? data::DatasetKind::SkewBoth : data::DatasetKind::SkewSmoothOnly;
    return r;
}

} // namespace

SkewModels train_skew_models(const ExperimentConfig &base, std::size_t evaluation_count) {
    SkewModels m;
    m.config = skew_config(base);
    for (const bool both : {false, true}) {
        progress("skew", "training " + role_name(both));
        auto r = train_member0(skew_role_config(m.config, both));
        (both ? m.both : m.smooth_only) = std::move(r.model);
        (both ? m.both_history : m.smooth_only_history) = std::move(r.history);
    }
    m.items = skew_evaluation_items(m.config, evaluation_count);
    encode_skew(m);
    return m;
}

SkewModels load_or_train_skew_models(const ExperimentConfig &base, const std::string &dir,
                                     std::size_t evaluation_count) {
    SkewModels m;
    m.config = skew_config(base);
    const std::string hash = config_hash(m.config);
    for (const bool both : {false, true}) {
        const ExperimentConfig rc = skew_role_config(m.config, both);
        const std::string path = dir + "/" + role_name(both) + ".json";
        bool loaded = false;
        if (std::filesystem::exists(path)) {
            json meta;
            auto state = optim::checkpoint_from_json(json::parse(table::read_text(path)), &meta);
            if (meta.value("config_hash", std::string()) == hash &&
                state.iteration == optim::iteration_count(rc.source, rc.train)) {
                (both ? m.both : m.smooth_only) = std::move(state.model);
                (both ? m.both_history : m.smooth_only_history) = std::move(state.history);
                loaded = true;
                progress("skew", "reusing " + path);
            }
        }
        if (!loaded) {
            progress("skew", "training " + role_name(both));
            auto r = train_member0(rc);
            json meta = {{"config_hash", hash}, {"role", role_name(both)}};
            table::write_text(path, json_text(optim::checkpoint_json(r.state, meta)));
            (both ? m.both : m.smooth_only) = std::move(r.model);
            (both ? m.both_history : m.smooth_only_history) = std::move(r.history);
        }
    }
    m.items = skew_evaluation_items(m.config, evaluation_count);
    encode_skew(m);
    return m;
}

FigureResult figure_clustering(const SkewModels &models) {
    FigureResult out;
    out.id = "fig7";
    const auto &c = models.config;
    const std::vector<std::pair<std::string, analysis::ComponentSlice>> slices = {
        {"all", analysis::ComponentSlice::all()}, {"minor4", analysis::ComponentSlice::minor(4)}};
    for (const bool both : {false, true}) {
        const auto &set = both ? models.both_latent : models.smooth_only_latent;
        const auto labels = set.label_vector();
        const auto pca = analysis::pca_fit(set.x);
        const Matrix coords = analysis::pca_project(pca, set.x, set.x.cols());
        const Eigen::Index last = coords.cols() - 1;
        auto t = new_table(c, {"label", "mean", "std", "pc_0", "pc_1",
                               "pc_" + std::to_string(last - 1), "pc_" + std::to_string(last),
                               "cluster_all", "cluster_minor4"});
        std::vector<std::vector<int>> assignments;
        auto &m = out.metrics[role_name(both)];
        m["binned_loss"] = history_json(both ? models.both_history : models.smooth_only_history,
                                        c.train.bin_width);
        m["explained_variance_top4"] = pca.explained_variance.head(4).sum();
        for (std::size_t s = 0; s < slices.size(); ++s) {
            const Matrix xs = analysis::component_slice(pca, set.x, slices[s].second);
            Rng rng(tagged_seed(c, SeedTag::Cluster, 2 * s + (both ? 1 : 0)));
            const auto fit = analysis::gmm_fit(xs, 2, rng);
            assignments.push_back(analysis::gmm_predict(fit.mixture, xs));
            auto &ms = m["gmm"][slices[s].first];
            ms["accuracy"] = analysis::clustering_accuracy(assignments.back(), labels);
            ms["iterations"] = fit.iterations;
            ms["converged"] = fit.converged;
            ms["mean_log_likelihood"] = fit.log_likelihood.back();
        }
        for (std::size_t r = 0; r < set.rows(); ++r) {
            const auto ri = static_cast<Eigen::Index>(r);
            t.rows.push_back({std::to_string(labels[r]), format_double(set.specs[r].mean),
                              format_double(set.specs[r].std), format_double(coords(ri, 0)),
                              format_double(coords(ri, 1)), format_double(coords(ri, last - 1)),
                              format_double(coords(ri, last)), std::to_string(assignments[0][r]),
                              std::to_string(assignments[1][r])});
        }
        out.tables.emplace_back("latent_" + role_name(both), std::move(t));
    }
    out.metrics["evaluation_size"] = models.items.size();
    return out;
}

FigureResult figure_decision_boundaries(const SkewModels &models, std::size_t grid) {
    FigureResult out;
    out.id = "fig8";
    const auto &c = models.config;
    const auto &set = models.both_latent;
    const auto labels = set.label_vector();
    const auto pca = analysis::pca_fit(set.x);
    const Matrix xs = analysis::component_slice(pca, set.x, analysis::ComponentSlice::minor(2));
    Rng rng(tagged_seed(c, SeedTag::Split));
    const auto split = analysis::train_test_split(set.rows(), c.analysis.test_fraction, rng);
    auto rows_of = [&](const std::vector<std::size_t> &idx) {
        Matrix m(static_cast<Eigen::Index>(idx.size()), xs.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            m.row(static_cast<Eigen::Index>(i)) = xs.row(static_cast<Eigen::Index>(idx[i]));
        }
        return m;
    };
    auto labels_of = [&](const std::vector<std::size_t> &idx) {
        std::vector<int> y;
        for (const auto i : idx) {
            y.push_back(labels[i]);
        }
        return y;
    };
    const Matrix xtr = rows_of(split.train);
    const Matrix xte = rows_of(split.test);
    const auto ytr = labels_of(split.train);
    const auto yte = labels_of(split.test);

    const Vector lo = xs.colwise().minCoeff();
    const Vector hi = xs.colwise().maxCoeff();
    const Vector pad = 0.05 * (hi - lo);
    Matrix plane(static_cast<Eigen::Index>(grid * grid), 2);
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            const double fi = static_cast<double>(i) / static_cast<double>(grid - 1);
            const double fj = static_cast<double>(j) / static_cast<double>(grid - 1);
            const auto r = static_cast<Eigen::Index>(i * grid + j);
            plane(r, 0) = lo(0) - pad(0) + fi * (hi(0) - lo(0) + 2 * pad(0));
            plane(r, 1) = lo(1) - pad(1) + fj * (hi(1) - lo(1) + 2 * pad(1));
        }
    }
    const std::vector<std::pair<std::string, analysis::Kernel>> kernels = {
        {"svm_linear", analysis::Kernel::linear()},
        {"svm_poly3", analysis::Kernel::poly(3, 5.0)},
        {"svm_rbf", analysis::Kernel::rbf(5.0)}};
    std::vector<std::string> cols = {"minor_1", "minor_0"};
    std::vector<Vector> surfaces;
    for (const auto &[name, k] : kernels) {
        cols.push_back(name);
        const auto model = analysis::svm_fit(xtr, analysis::to_pm1(ytr), k,
                                             analysis::SvmConfig{c.analysis.c});
        surfaces.push_back(analysis::svm_decision(model, plane));
        out.metrics["test_accuracy"][name] = analysis::classification_accuracy(
            analysis::svm_predict(model, xte), analysis::to_pm1(yte));
    }
    cols.emplace_back("logreg");
    const auto lr = analysis::logreg_fit(xtr, ytr, analysis::LogRegConfig{c.analysis.l2});
    surfaces.push_back(analysis::logreg_probability(lr, plane).array() - 0.5);
    out.metrics["test_accuracy"]["logreg"] =
        analysis::classification_accuracy(analysis::logreg_predict(lr, xte), yte);

    auto surface = new_table(c, cols);
    for (Eigen::Index r = 0; r < plane.rows(); ++r) {
        std::vector<std::string> row = {format_double(plane(r, 0)), format_double(plane(r, 1))};
        for (const auto &s : surfaces) {
            row.push_back(format_double(s(r)));
        }
        surface.rows.push_back(std::move(row));
    }
    auto points = new_table(c, {"minor_1", "minor_0", "label"});
    for (const auto i : split.train) {
        const auto ri = static_cast<Eigen::Index>(i);
        points.rows.push_back(
            {format_double(xs(ri, 0)), format_double(xs(ri, 1)), std::to_string(labels[i])});
    }
    out.tables = {{"decision_surface", surface}, {"training_points", points}};
    return out;
}

FigureResult table_classification(const SkewModels &models) {
    FigureResult out;
    out.id = "table1";
    const auto &c = models.config;
    auto t = new_table(c, {"model", "training", "kernel", "space", "accuracy"});
    Rng rng(tagged_seed(c, SeedTag::Split));
    const auto split =
        analysis::train_test_split(models.items.size(), c.analysis.test_fraction, rng);
    out.metrics["test_size"] = split.test.size();
    out.metrics["train_size"] = split.train.size();
    const std::vector<std::pair<std::string, analysis::Kernel>> kernels = {
        {"poly4", analysis::Kernel::poly(4, 2.0)}, {"rbf", analysis::Kernel::rbf(20.0)}};
    const std::size_t dims = c.analysis.pca_dims;
    const std::string reduced = "pca" + std::to_string(dims);
    for (const bool both : {false, true}) {
        const auto &set = both ? models.both_latent : models.smooth_only_latent;
        const auto tr = set.subset(split.train);
        const auto te = set.subset(split.test);
        const auto ytr = tr.label_vector();
        const auto yte = te.label_vector();
        const auto pca = analysis::pca_fit(tr.x);
        const std::vector<std::pair<std::string, std::pair<Matrix, Matrix>>> spaces = {
            {"all", {tr.x, te.x}},
            {reduced, {analysis::pca_project(pca, tr.x, dims), analysis::pca_project(pca, te.x, dims)}}};
        auto &m = out.metrics[role_name(both)];
        m["pca_explained_variance"] = pca.explained_variance.head(static_cast<Eigen::Index>(dims)).sum();
        for (const auto &[kname, k] : kernels) {
            for (const auto &[sname, xy] : spaces) {
                const auto model = analysis::svm_fit(xy.first, analysis::to_pm1(ytr), k,
                                                     analysis::SvmConfig{c.analysis.c});
                const double acc = analysis::classification_accuracy(
                    analysis::svm_predict(model, xy.second), analysis::to_pm1(yte));
                m["svm_" + kname][sname] = acc;
                t.rows.push_back({"svm", role_name(both), kname, sname, format_double(acc)});
            }
        }
        for (const auto &[sname, xy] : spaces) {
            const auto lr = analysis::logreg_fit(xy.first, ytr, analysis::LogRegConfig{c.analysis.l2});
            const double acc =
                analysis::classification_accuracy(analysis::logreg_predict(lr, xy.second), yte);
            m["logreg"][sname] = acc;
            t.rows.push_back({"logreg", role_name(both), "-", sname, format_double(acc)});
        }
    }
    out.tables = {{"accuracy", t}};
    return out;
}

const std::vector<std::string> &figure_ids() {
    static const std::vector<std::string> ids = {"fig3", "fig5", "fig6", "fig7", "fig8", "table1"};
    return ids;
}

FigureResult reproduce_figure(const std::string &id, const ExperimentConfig &config) {
    FigureResult result;
    if (id == "fig3") {
        result = figure_loss_vs_latent(config, {4, 6, 8, 12});
    } else if (id == "fig5") {
        result = figure_latent_grid(config);
    } else if (id == "fig6") {
        result = figure_latent_order(config);
    } else if (id == "fig7" || id == "fig8" || id == "table1") {
        const auto models = load_or_train_skew_models(config, config.output_dir + "/skew_models");
        result = id == "fig7"   ? figure_clustering(models)
                 : id == "fig8" ? figure_decision_boundaries(models)
                                : table_classification(models);
    } else {
        throw ConfigError("unknown figure id '" + id + "'");
    }
    write_figure(result, config.output_dir + "/" + id);
    return result;
}

} // namespace hqa::cli

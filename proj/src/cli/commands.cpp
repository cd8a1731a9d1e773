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

#include "hqa/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <thread>

#include "hqa/analysis/classify.hpp"
#include "hqa/analysis/cluster.hpp"
#include "hqa/analysis/latent_set.hpp"
#include "hqa/analysis/metrics.hpp"
#include "hqa/analysis/pca.hpp"
#include "hqa/cli/experiments.hpp"
#include "hqa/common/error.hpp"
#include "hqa/optim/budget.hpp"
#include "hqa/optim/train.hpp"

namespace hqa::cli {

namespace {

using nlohmann::json;
using table::format_double;

std::string or_default(const std::string &path, const ExperimentConfig &c,
                       const std::string &name) {
    return path.empty() ? c.output_dir + "/" + name : path;
}

table::Table history_table(const ExperimentConfig &c, const optim::LossHistory &h,
                           const std::string &column) {
    table::Table t;
    t.columns = {"bin", "iteration_end", column};
    stamp(t, c);
    const auto binned = h.binned(c.train.bin_width);
    for (std::size_t b = 0; b < binned.size(); ++b) {
        const std::size_t end = std::min(h.per_iteration.size(), (b + 1) * c.train.bin_width);
        t.rows.push_back({std::to_string(b), std::to_string(end), format_double(binned[b])});
    }
    return t;
}

optim::TrainingState run_member(const ExperimentConfig &c, std::size_t member,
                                const TrainOptions &options, const std::string &dir) {
    optim::TrainConfig tc = c.train;
    tc.seed = optim::member_seed(c.train.seed, member);
    const std::string ckpt = dir + "/checkpoint.json";
    const std::string hash = config_hash(c);
    optim::TrainingState state;
    if (options.resume && std::filesystem::exists(ckpt)) {
        json meta;
        state = optim::checkpoint_from_json(json::parse(table::read_text(ckpt)), &meta);
        if (meta.value("config_hash", std::string()) != hash) {
            throw ConfigError("checkpoint '" + ckpt + "' was written under a different configuration");
        }
    } else {
        state = optim::start_training(optim::initial_model(c.shape, tc.seed), c.source, tc);
    }
    std::uint64_t target = optim::iteration_count(c.source, tc);
    if (options.stop_at) {
        target = std::min(target, *options.stop_at);
    }
    optim::continue_training(state, c.source, tc, target);
    const json meta = {{"config_hash", hash}, {"member", member}, {"member_seed", tc.seed}};
    table::write_text(ckpt, json_text(optim::checkpoint_json(state, meta)));
    table::write_file(dir + "/loss.tsv", history_table(c, state.history, "loss"));
    return state;
}

Matrix select_rows(const Matrix &x, const std::vector<std::size_t> &idx) {
    Matrix out(static_cast<Eigen::Index>(idx.size()), x.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(idx[i]));
    }
    return out;
}

std::vector<int> classify(const AnalysisConfig &a, const Matrix &xtr, const std::vector<int> &ytr,
                          const Matrix &xte) {
    if (a.classifier == "logreg") {
        return analysis::logreg_predict(
            analysis::logreg_fit(xtr, ytr, analysis::LogRegConfig{a.l2}), xte);
    }
    const auto model =
        analysis::svm_fit(xtr, analysis::to_pm1(ytr), a.kernel, analysis::SvmConfig{a.c});
    return analysis::to_01(analysis::svm_predict(model, xte));
}

json number(double x) {
    if (std::isfinite(x) && std::floor(x) == x && std::abs(x) < 9.0e15) {
        return json(static_cast<std::int64_t>(x));
    }
    return json(x);
}

} // namespace

std::string cmd_gen_data(const ExperimentConfig &c, DataSplit split, const std::string &out_path) {
    std::vector<data::DatasetItem> items;
    if (split == DataSplit::Train) {
        Rng rng(tagged_seed(c, SeedTag::TrainingSet));
        items = data::build_training_set(c.source.data, c.source.size, rng);
    } else if (data::is_skewed(c.source.data.kind)) {
        items = skew_evaluation_items(c, c.test_size);
    } else {
        items = gaussian_test_items(c, c.test_size);
    }
    auto t = data::manifest_table(items);
    stamp(t, c);
    const std::string path =
        or_default(out_path, c, split == DataSplit::Train ? "manifest.tsv" : "test_manifest.tsv");
    table::write_file(path, t);
    return path;
}

json cmd_train(const ExperimentConfig &c, const TrainOptions &options) {
    const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
    std::vector<optim::TrainingState> states(c.ensemble);
    auto member_dir = [&](std::size_t i) { return c.output_dir + "/seed_" + std::to_string(i); };
    for (std::size_t start = 0; start < c.ensemble; start += workers) {
        const std::size_t stop = std::min(c.ensemble, start + workers);
        if (stop - start == 1) {
            states[start] = run_member(c, start, options, member_dir(start));
            continue;
        }
        std::vector<std::future<optim::TrainingState>> pending;
        for (std::size_t i = start; i < stop; ++i) {
            pending.push_back(std::async(std::launch::async, run_member, std::cref(c), i,
                                         std::cref(options), member_dir(i)));
        }
        for (std::size_t i = start; i < stop; ++i) {
            states[i] = pending[i - start].get();
        }
    }
    optim::LossHistory mean;
    const std::size_t len = states.front().history.per_iteration.size();
    mean.per_iteration.assign(len, 0.0);
    for (const auto &s : states) {
        for (std::size_t k = 0; k < len; ++k) {
            mean.per_iteration[k] += s.history.per_iteration[k] / static_cast<double>(states.size());
        }
    }
    table::write_file(c.output_dir + "/loss.tsv", history_table(c, mean, "mean_loss"));
    json summary;
    summary["config_hash"] = config_hash(c);
    summary["iterations"] = len;
    summary["target_iterations"] = optim::iteration_count(c.source, c.train);
    summary["members"] = c.ensemble;
    const auto binned = mean.binned(c.train.bin_width);
    summary["final_binned_loss"] = binned.empty() ? json(nullptr) : json(binned.back());
    table::write_text(c.output_dir + "/train_summary.json", json_text(summary));
    return summary;
}

std::string cmd_encode(const ExperimentConfig &c, const std::string &checkpoint_path,
                       const std::string &manifest_path, const std::string &out_path) {
    const auto text = table::read_text(checkpoint_path);
    const auto doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw FormatError("checkpoint '" + checkpoint_path + "' is not valid JSON");
    }
    const auto state = optim::checkpoint_from_json(doc);
    const auto items = data::items_from_table(table::read_file(manifest_path));
    for (const auto &item : items) {
        if (item.num_qubits != state.model.n()) {
            throw ConfigError("manifest rows have " + std::to_string(item.num_qubits) +
                              " qubits, model expects " + std::to_string(state.model.n()));
        }
    }
    auto t = analysis::latent_table(analysis::encode_items(state.model, items));
    stamp(t, c);
    const std::string path = or_default(out_path, c, "latent.tsv");
    table::write_file(path, t);
    return path;
}

json cmd_analyze(const ExperimentConfig &c, const std::string &latent_path,
                 const std::string &out_dir) {
    const std::string dir = out_dir.empty() ? c.output_dir + "/analysis" : out_dir;
    const auto set = analysis::latent_set_from_table(table::read_file(latent_path));
    const auto &a = c.analysis;
    if (set.rows() < 2) {
        throw FormatError("latent table needs at least two rows");
    }
    const auto v = static_cast<std::size_t>(set.x.cols());
    if (a.pca_dims > v || (a.slice.kind != analysis::SliceKind::All && a.slice.count > v)) {
        throw ConfigError("analysis dimensions exceed the latent width " + std::to_string(v));
    }
    json metrics;
    metrics["rows"] = set.rows();

    const auto pca = analysis::pca_fit(set.x);
    table::Table ev;
    ev.columns = {"component", "variance", "explained_variance_ratio"};
    stamp(ev, c);
    for (Eigen::Index k = 0; k < pca.variances.size(); ++k) {
        ev.rows.push_back({std::to_string(k), format_double(pca.variances(k)),
                           format_double(pca.explained_variance(k))});
    }
    table::write_file(dir + "/explained_variance.tsv", ev);
    metrics["explained_variance"] = std::vector<double>(
        pca.explained_variance.data(), pca.explained_variance.data() + pca.explained_variance.size());

    const Matrix coords = analysis::pca_project(pca, set.x, v);
    table::Table pc;
    pc.columns = {"row"};
    for (std::size_t k = 0; k < v; ++k) {
        pc.columns.push_back("pc_" + std::to_string(k));
    }
    stamp(pc, c);
    for (Eigen::Index r = 0; r < coords.rows(); ++r) {
        std::vector<std::string> row = {std::to_string(r)};
        for (Eigen::Index k = 0; k < coords.cols(); ++k) {
            row.push_back(format_double(coords(r, k)));
        }
        pc.rows.push_back(std::move(row));
    }
    table::write_file(dir + "/pca_coordinates.tsv", pc);

    const Matrix xs = analysis::component_slice(pca, set.x, a.slice);
    Rng rng(tagged_seed(c, SeedTag::Cluster));
    std::vector<int> assignment;
    if (a.clusterer == "kmeans") {
        assignment = analysis::kmeans(xs, a.clusters, rng).assignment;
    } else {
        const auto fit = analysis::gmm_fit(xs, a.clusters, rng);
        assignment = analysis::gmm_predict(fit.mixture, xs);
        metrics["clustering"]["iterations"] = fit.iterations;
        metrics["clustering"]["converged"] = fit.converged;
    }
    metrics["clustering"]["clusterer"] = a.clusterer;
    metrics["clustering"]["slice"] = slice_name(a.slice);
    metrics["clustering"]["clusters"] = a.clusters;
    table::Table as;
    as.columns = {"row", "label", "cluster"};
    stamp(as, c);
    for (std::size_t r = 0; r < set.rows(); ++r) {
        as.rows.push_back({std::to_string(r),
                           set.labels[r] ? std::to_string(*set.labels[r]) : std::string(),
                           std::to_string(assignment[r])});
    }
    table::write_file(dir + "/assignments.tsv", as);

    if (set.fully_labeled()) {
        const auto labels = set.label_vector();
        metrics["clustering"]["accuracy"] = analysis::clustering_accuracy(assignment, labels);
        Rng split_rng(tagged_seed(c, SeedTag::Split));
        const auto split = analysis::train_test_split(set.rows(), a.test_fraction, split_rng);
        std::vector<int> ytr;
        std::vector<int> yte;
        for (const auto i : split.train) {
            ytr.push_back(labels[i]);
        }
        for (const auto i : split.test) {
            yte.push_back(labels[i]);
        }
        if (split.train.empty() || split.test.empty()) {
            throw ConfigError("analysis.test_fraction leaves an empty train or test part");
        }
        const Matrix xtr = select_rows(set.x, split.train);
        const Matrix xte = select_rows(set.x, split.test);
        const auto train_pca = analysis::pca_fit(xtr);
        const Matrix rtr = analysis::pca_project(train_pca, xtr, a.pca_dims);
        const Matrix rte = analysis::pca_project(train_pca, xte, a.pca_dims);
        const auto p_all = classify(a, xtr, ytr, xte);
        const auto p_red = classify(a, rtr, ytr, rte);
        const std::string reduced = "pca" + std::to_string(a.pca_dims);
        auto &mc = metrics["classification"];
        mc["classifier"] = a.classifier;
        if (a.classifier == "svm") {
            mc["kernel"] = analysis::kernel_name(a.kernel);
        }
        mc["test_size"] = split.test.size();
        mc["accuracy"]["all"] = analysis::classification_accuracy(p_all, yte);
        mc["accuracy"][reduced] = analysis::classification_accuracy(p_red, yte);
        table::Table pr;
        pr.columns = {"row", "label", "prediction_all", "prediction_" + reduced};
        stamp(pr, c);
        for (std::size_t i = 0; i < split.test.size(); ++i) {
            pr.rows.push_back({std::to_string(split.test[i]), std::to_string(yte[i]),
                               std::to_string(p_all[i]), std::to_string(p_red[i])});
        }
        table::write_file(dir + "/predictions.tsv", pr);
    }
    metrics["config_hash"] = config_hash(c);
    table::write_text(dir + "/metrics.json", json_text(metrics));
    return metrics;
}

json cmd_budget(const ExperimentConfig &c, const BudgetOptions &o) {
    const std::size_t pe =
        o.encoder_params.value_or(c.shape.encoder_layers * c.shape.register_qubits());
    const std::size_t pd = o.decoder_params.value_or(c.shape.decoder_layers * c.shape.input_qubits);
    const double per_instance = optim::sample_budget(pe, pd, o.eps_latent, o.eps_fidelity);
    const auto iterations = optim::iteration_count(c.source, c.train);
    json j;
    j["encoder_params"] = pe;
    j["decoder_params"] = pd;
    j["eps_latent"] = o.eps_latent;
    j["eps_fidelity"] = o.eps_fidelity;
    j["samples_per_iteration"] = number(per_instance);
    j["batch_size"] = c.train.batch_size;
    j["iterations"] = iterations;
    j["samples_per_run"] = number(per_instance * static_cast<double>(c.train.batch_size) *
                                  static_cast<double>(iterations));
    return j;
}

json error_record(const std::exception &e) {
    std::string type = "error";
    if (dynamic_cast<const ConfigError *>(&e) != nullptr) {
        type = "config_error";
    } else if (dynamic_cast<const FormatError *>(&e) != nullptr) {
        type = "format_error";
    } else if (dynamic_cast<const TrainingAborted *>(&e) != nullptr) {
        type = "training_aborted";
    } else if (dynamic_cast<const ConsistencyError *>(&e) != nullptr) {
        type = "consistency_error";
    } else if (dynamic_cast<const json::exception *>(&e) != nullptr) {
        type = "format_error";
    }
    json j;
    j["error"] = {{"type", type}, {"message", e.what()}};
    if (const auto *t = dynamic_cast<const TrainingAborted *>(&e)) {
        j["error"]["iteration"] = t->iteration();
    }
    return j;
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ConfigError *>(&e) != nullptr) {
        return 2;
    }
    if (dynamic_cast<const FormatError *>(&e) != nullptr ||
        dynamic_cast<const nlohmann::json::exception *>(&e) != nullptr) {
        return 3;
    }
    if (dynamic_cast<const TrainingAborted *>(&e) != nullptr) {
        return 4;
    }
    return 1;
}

} // namespace hqa::cli

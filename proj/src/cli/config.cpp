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

#include "hqa/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "hqa/common/error.hpp"
#include "hqa/common/table.hpp"

namespace hqa::cli {

namespace {

using nlohmann::json;

void merge_into(json &base, const json &patch, const std::string &prefix) {
    if (!patch.is_object()) {
        throw ConfigError("configuration section '" + prefix + "' must be an object");
    }
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!base.contains(it.key())) {
            throw ConfigError("unknown configuration key '" + key + "'");
        }
        auto &slot = base[it.key()];
        if (slot.is_object()) {
            merge_into(slot, it.value(), key);
        } else {
            slot = it.value();
        }
    }
}

template <typename T>
T get(const json &j, const char *section, const char *key) {
    try {
        return j.at(section).at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("configuration key '") + section + "." + key +
                          "': " + e.what());
    }
}

std::optional<double> get_optional(const json &j, const char *section, const char *key) {
    const auto &v = j.at(section).at(key);
    if (v.is_null()) {
        return std::nullopt;
    }
    return get<double>(j, section, key);
}

ansatz::Topology topology_from(const std::string &name) {
    if (name == "chain") {
        return ansatz::Topology::Chain;
    }
    if (name == "ring") {
        return ansatz::Topology::Ring;
    }
    throw ConfigError("unknown topology '" + name + "'");
}

analysis::ComponentSlice slice_from(const std::string &name, std::size_t m) {
    if (name == "all") {
        return analysis::ComponentSlice::all();
    }
    if (name == "top") {
        return analysis::ComponentSlice::top(m);
    }
    if (name == "minor") {
        return analysis::ComponentSlice::minor(m);
    }
    throw ConfigError("unknown component slice '" + name + "'");
}

json optional_json(const std::optional<double> &v) {
    return v ? json(*v) : json(nullptr);
}

} // namespace

json default_config_json() {
    json j;
    j["experiment"] = "custom";
    j["seed"] = 1;
    j["output_dir"] = "out";
    j["model"] = {{"n", 5}, {"v", 12}, {"encoder_layers", 4}, {"decoder_layers", 4},
                  {"topology", "chain"}};
    j["data"] = {{"kind", "gaussian_grid"}, {"size", 800},        {"fresh", true},
                 {"mean_lo", nullptr},      {"mean_hi", nullptr}, {"std_lo", nullptr},
                 {"std_hi", nullptr},       {"fixed_mean", 0.0},  {"fixed_std", 3.0},
                 {"slope", nullptr},        {"intercept", data::kDefaultIntercept}};
    j["train"] = {{"batch_size", 2},     {"epochs", 10},          {"step_size", 0.1},
                  {"ann_step_size", 0.003}, {"beta1", 0.9},      {"beta2", 0.999},
                  {"epsilon", 1e-8},     {"bin_width", 100},     {"ensemble", 1},
                  {"encoder_shots", 0},  {"fidelity_shots", 0}};
    j["eval"] = {{"test_size", 1000}};
    j["analysis"] = {{"slice", "minor"},  {"components", 4},   {"clusterer", "gmm"},
                     {"clusters", 2},     {"classifier", "svm"}, {"kernel", "rbf"},
                     {"degree", 4},       {"gamma", 20.0},     {"c", 1.0},
                     {"l2", 1e-4},        {"test_fraction", 0.3}, {"pca_dims", 4}};
    return j;
}

json merge_config(const json &user) {
    json out = default_config_json();
    if (!user.is_null()) {
        merge_into(out, user, "");
    }
    return out;
}

void apply_override(json &j, const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }
    json *node = &j;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        parts.push_back(part);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!node->is_object() || !node->contains(parts[i])) {
            throw ConfigError("unknown configuration key '" + path + "'");
        }
        node = &(*node)[parts[i]];
    }
    if (node->is_object()) {
        throw ConfigError("configuration key '" + path + "' names a section");
    }
    *node = value;
}

ExperimentConfig config_from_json(const json &j) {
    ExperimentConfig c;
    try {
        c.experiment = j.at("experiment").get<std::string>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.output_dir = j.at("output_dir").get<std::string>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("configuration: ") + e.what());
    }
    c.shape.input_qubits = get<std::size_t>(j, "model", "n");
    c.shape.latent_dim = get<std::size_t>(j, "model", "v");
    c.shape.encoder_layers = get<std::size_t>(j, "model", "encoder_layers");
    c.shape.decoder_layers = get<std::size_t>(j, "model", "decoder_layers");
    c.shape.topology = topology_from(get<std::string>(j, "model", "topology"));

    auto &d = c.source.data;
    d.kind = data::dataset_kind_from_string(get<std::string>(j, "data", "kind"));
    d.num_qubits = c.shape.input_qubits;
    d.mean_lo = get_optional(j, "data", "mean_lo");
    d.mean_hi = get_optional(j, "data", "mean_hi");
    d.std_lo = get_optional(j, "data", "std_lo");
    d.std_hi = get_optional(j, "data", "std_hi");
    d.fixed_mean = get<double>(j, "data", "fixed_mean");
    d.fixed_std = get<double>(j, "data", "fixed_std");
    d.slope = get_optional(j, "data", "slope");
    d.intercept = get<double>(j, "data", "intercept");
    c.source.size = get<std::size_t>(j, "data", "size");
    c.source.fresh = get<bool>(j, "data", "fresh");

    auto &t = c.train;
    t.batch_size = get<std::size_t>(j, "train", "batch_size");
    t.epochs = get<std::size_t>(j, "train", "epochs");
    t.adam.step_size = get<double>(j, "train", "step_size");
    t.ann_step_size = get<double>(j, "train", "ann_step_size");
    t.adam.beta1 = get<double>(j, "train", "beta1");
    t.adam.beta2 = get<double>(j, "train", "beta2");
    t.adam.epsilon = get<double>(j, "train", "epsilon");
    t.bin_width = get<std::size_t>(j, "train", "bin_width");
    t.mode = model::GradientMode{get<std::size_t>(j, "train", "encoder_shots"),
                                 get<std::size_t>(j, "train", "fidelity_shots")};
    t.seed = c.seed;
    c.ensemble = get<std::size_t>(j, "train", "ensemble");
    c.test_size = get<std::size_t>(j, "eval", "test_size");

    auto &a = c.analysis;
    a.slice = slice_from(get<std::string>(j, "analysis", "slice"),
                         get<std::size_t>(j, "analysis", "components"));
    a.clusterer = get<std::string>(j, "analysis", "clusterer");
    a.clusters = get<std::size_t>(j, "analysis", "clusters");
    a.classifier = get<std::string>(j, "analysis", "classifier");
    const auto kernel = get<std::string>(j, "analysis", "kernel");
    const auto degree = get<int>(j, "analysis", "degree");
    const auto g = get<double>(j, "analysis", "gamma");
    if (kernel == "linear") {
        a.kernel = analysis::Kernel::linear();
    } else if (kernel == "poly") {
        a.kernel = analysis::Kernel::poly(degree, g);
    } else if (kernel == "rbf") {
        a.kernel = analysis::Kernel::rbf(g);
    } else {
        throw ConfigError("unknown kernel '" + kernel + "'");
    }
    a.c = get<double>(j, "analysis", "c");
    a.l2 = get<double>(j, "analysis", "l2");
    a.test_fraction = get<double>(j, "analysis", "test_fraction");
    a.pca_dims = get<std::size_t>(j, "analysis", "pca_dims");
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig &c) {
    json j = default_config_json();
    j["experiment"] = c.experiment;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["model"] = {{"n", c.shape.input_qubits},
                  {"v", c.shape.latent_dim},
                  {"encoder_layers", c.shape.encoder_layers},
                  {"decoder_layers", c.shape.decoder_layers},
                  {"topology", c.shape.topology == ansatz::Topology::Ring ? "ring" : "chain"}};
    const auto &d = c.source.data;
    j["data"] = {{"kind", data::to_string(d.kind)},
                 {"size", c.source.size},
                 {"fresh", c.source.fresh},
                 {"mean_lo", optional_json(d.mean_lo)},
                 {"mean_hi", optional_json(d.mean_hi)},
                 {"std_lo", optional_json(d.std_lo)},
                 {"std_hi", optional_json(d.std_hi)},
                 {"fixed_mean", d.fixed_mean},
                 {"fixed_std", d.fixed_std},
                 {"slope", optional_json(d.slope)},
                 {"intercept", d.intercept}};
    const auto &t = c.train;
    j["train"] = {{"batch_size", t.batch_size},
                  {"epochs", t.epochs},
                  {"step_size", t.adam.step_size},
                  {"ann_step_size", t.ann_step_size},
                  {"beta1", t.adam.beta1},
                  {"beta2", t.adam.beta2},
                  {"epsilon", t.adam.epsilon},
                  {"bin_width", t.bin_width},
                  {"ensemble", c.ensemble},
                  {"encoder_shots", t.mode.encoder_shots},
                  {"fidelity_shots", t.mode.fidelity_shots}};
    j["eval"] = {{"test_size", c.test_size}};
    const auto &a = c.analysis;
    const char *slice = a.slice.kind == analysis::SliceKind::All
                            ? "all"
                            : (a.slice.kind == analysis::SliceKind::TopPrincipal ? "top" : "minor");
    j["analysis"] = {{"slice", slice},
                     {"components", a.slice.count},
                     {"clusterer", a.clusterer},
                     {"clusters", a.clusters},
                     {"classifier", a.classifier},
                     {"kernel", analysis::kernel_name(a.kernel)},
                     {"degree", a.kernel.degree},
                     {"gamma", a.kernel.gamma},
                     {"c", a.c},
                     {"l2", a.l2},
                     {"test_fraction", a.test_fraction},
                     {"pca_dims", a.pca_dims}};
    if (a.kernel.kind != analysis::KernelKind::Poly) {
        j["analysis"]["degree"] = 4;
    }
    return j;
}

void ExperimentConfig::validate() const {
    try {
        shape.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    source.data.validate();
    if (source.size < 1) {
        throw ConfigError("data.size must be >= 1");
    }
    train.validate();
    if (ensemble < 1) {
        throw ConfigError("train.ensemble must be >= 1");
    }
    if (analysis.clusterer != "gmm" && analysis.clusterer != "kmeans") {
        throw ConfigError("analysis.clusterer must be gmm or kmeans");
    }
    if (analysis.classifier != "svm" && analysis.classifier != "logreg") {
        throw ConfigError("analysis.classifier must be svm or logreg");
    }
    if (analysis.clusters < 1 || analysis.clusters > 8) {
        throw ConfigError("analysis.clusters must lie in [1, 8]");
    }
    if (!(analysis.test_fraction > 0.0 && analysis.test_fraction < 1.0)) {
        throw ConfigError("analysis.test_fraction must lie in (0, 1)");
    }
    if (!(analysis.c > 0.0) || !(analysis.l2 >= 0.0)) {
        throw ConfigError("analysis.c must be > 0 and analysis.l2 >= 0");
    }
    if (analysis.kernel.kind != analysis::KernelKind::Linear &&
        !(analysis.kernel.gamma > 0.0)) {
        throw ConfigError("analysis.gamma must be > 0");
    }
    if (analysis.kernel.kind == analysis::KernelKind::Poly && analysis.kernel.degree < 1) {
        throw ConfigError("analysis.degree must be >= 1");
    }
    if (analysis.slice.kind != analysis::SliceKind::All &&
        analysis.slice.count > shape.latent_dim) {
        throw ConfigError("analysis.components exceeds the latent dimension");
    }
    if (analysis.pca_dims < 1 || analysis.pca_dims > shape.latent_dim) {
        throw ConfigError("analysis.pca_dims must lie in [1, v]");
    }
}

ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides) {
    json user;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open configuration file '" + path + "'");
        }
        user = json::parse(in, nullptr, false);
        if (user.is_discarded()) {
            throw ConfigError("configuration file '" + path + "' is not valid JSON");
        }
    }
    json resolved = merge_config(user);
    for (const auto &o : overrides) {
        apply_override(resolved, o);
    }
    return config_from_json(resolved);
}

std::string config_hash(const ExperimentConfig &config) {
    auto j = config_to_json(config);
    j.erase("output_dir");
    return table::fnv1a_hex(j.dump());
}

std::string slice_name(const analysis::ComponentSlice &slice) {
    switch (slice.kind) {
    case analysis::SliceKind::All:
        return "all";
    case analysis::SliceKind::TopPrincipal:
        return "top" + std::to_string(slice.count);
    case analysis::SliceKind::Minor:
        return "minor" + std::to_string(slice.count);
    }
    return "?";
}

} // namespace hqa::cli

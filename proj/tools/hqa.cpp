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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqa/cli/commands.hpp"
#include "hqa/cli/config.hpp"
#include "hqa/cli/experiments.hpp"

namespace {

using hqa::cli::ExperimentConfig;

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *sub, Common &common) {
    sub->add_option("-c,--config", common.config_path, "JSON configuration file");
    sub->add_option("-s,--set", common.overrides, "Override a key: section.key=value")
        ->take_all();
}

ExperimentConfig load(const Common &common) {
    return hqa::cli::load_config(common.config_path, common.overrides);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum autoencoder lab"};
    app.require_subcommand(1);
    Common common;

    auto *gen = app.add_subcommand("gen-data", "Write a dataset manifest");
    add_common(gen, common);
    std::string gen_out;
    std::string gen_split = "train";
    gen->add_option("-o,--out", gen_out, "Manifest path (default <output_dir>/manifest.tsv)");
    gen->add_option("--split", gen_split, "train or test")
        ->check(CLI::IsMember({"train", "test"}));

    auto *train = app.add_subcommand("train", "Train an ensemble of HQAs");
    add_common(train, common);
    hqa::cli::TrainOptions train_opts;
    std::uint64_t stop_at = 0;
    train->add_flag("--resume", train_opts.resume, "Continue from existing checkpoints");
    auto *stop_opt = train->add_option("--stop-at", stop_at, "Stop at this iteration");

    auto *enc = app.add_subcommand("encode", "Encode a manifest into a latent table");
    add_common(enc, common);
    std::string ckpt;
    std::string manifest;
    std::string enc_out;
    enc->add_option("--checkpoint", ckpt, "Checkpoint file")->required();
    enc->add_option("--manifest", manifest, "Dataset manifest")->required();
    enc->add_option("-o,--out", enc_out, "Latent table path (default <output_dir>/latent.tsv)");

    auto *ana = app.add_subcommand("analyze", "PCA, clustering and classification of latents");
    add_common(ana, common);
    std::string latent;
    std::string ana_out;
    ana->add_option("--latent", latent, "Latent table")->required();
    ana->add_option("-o,--out-dir", ana_out, "Output directory (default <output_dir>/analysis)");

    auto *rep = app.add_subcommand("reproduce-figure", "Regenerate the data behind a figure");
    add_common(rep, common);
    std::string figure;
    rep->add_option("id", figure, "Figure id")
        ->required()
        ->check(CLI::IsMember(hqa::cli::figure_ids()));

    auto *bud = app.add_subcommand("budget", "Circuit-sample accounting");
    add_common(bud, common);
    hqa::cli::BudgetOptions budget_opts;
    std::size_t pe = 0;
    std::size_t pd = 0;
    auto *pe_opt = bud->add_option("--encoder-params", pe, "P_E (default from the model shape)");
    auto *pd_opt = bud->add_option("--decoder-params", pd, "P_D (default from the model shape)");
    bud->add_option("--eps-latent", budget_opts.eps_latent, "Latent tolerance");
    bud->add_option("--eps-fidelity", budget_opts.eps_fidelity, "Fidelity tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        const ExperimentConfig config = load(common);
        if (gen->parsed()) {
            const auto split =
                gen_split == "test" ? hqa::cli::DataSplit::Test : hqa::cli::DataSplit::Train;
            std::cout << hqa::cli::cmd_gen_data(config, split, gen_out) << '\n';
        } else if (train->parsed()) {
            if (*stop_opt) {
                train_opts.stop_at = stop_at;
            }
            std::cout << hqa::cli::json_text(hqa::cli::cmd_train(config, train_opts));
        } else if (enc->parsed()) {
            std::cout << hqa::cli::cmd_encode(config, ckpt, manifest, enc_out) << '\n';
        } else if (ana->parsed()) {
            std::cout << hqa::cli::json_text(hqa::cli::cmd_analyze(config, latent, ana_out));
        } else if (rep->parsed()) {
            std::cout << hqa::cli::json_text(hqa::cli::reproduce_figure(figure, config).metrics);
        } else if (bud->parsed()) {
            if (*pe_opt) {
                budget_opts.encoder_params = pe;
            }
            if (*pd_opt) {
                budget_opts.decoder_params = pd;
            }
            std::cout << hqa::cli::json_text(hqa::cli::cmd_budget(config, budget_opts));
        }
    } catch (const std::exception &e) {
        std::cerr << hqa::cli::error_record(e).dump() << '\n';
        return hqa::cli::exit_code_for(e);
    }
    return 0;
}

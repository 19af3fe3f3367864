// SPDX-License-Identifier: Apache-2.0
//
// mawi - simulation and optimization toolkit for movable-antenna wireless systems
// Copyright (C) 2026 the mawi authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file
// except in compliance with the License. You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the
// License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND,
// either express or implied. See the License for the specific language governing permissions
// and limitations under the License.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mawi.h>

namespace
{

struct SubOptions
{
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t reps = 0;
    std::size_t threads = 1;
    bool quiet = false;
    bool have_seed = false;
    bool have_reps = false;
    bool have_out = false;
};

// Unique-ownership wrappers so early returns cannot leak C-API resources.
using ExperimentPtr = std::unique_ptr<mawi_experiment, decltype(&mawi_experiment_free)>;
using StringPtr = std::unique_ptr<char, decltype(&mawi_string_free)>;

int fail(mawi_status status)
{
    std::cerr << "error: " << mawi_last_error() << "\n";
    return static_cast<int>(status);
}

int run_kind(const std::string &kind, const SubOptions &opt)
{
    ExperimentPtr experiment(nullptr, mawi_experiment_free);
    {
        mawi_experiment *raw = nullptr;
        const mawi_status status =
            opt.config.empty() ? mawi_experiment_create(kind.c_str(), &raw)
                               : mawi_experiment_load(opt.config.c_str(), &raw);
        if (status != MAWI_OK)
            return fail(status);
        experiment.reset(raw);
    }
    if (kind != mawi_experiment_kind(experiment.get()))
    {
        std::cerr << "error: config file '" << opt.config << "' is for kind '"
                  << mawi_experiment_kind(experiment.get()) << "' but the subcommand is '"
                  << kind << "'\n";
        return static_cast<int>(MAWI_ERR_CONFIG);
    }
    if (opt.have_seed)
        if (const auto s = mawi_experiment_set_seed(experiment.get(), opt.seed); s != MAWI_OK)
            return fail(s);
    if (opt.have_reps)
        if (const auto s = mawi_experiment_set_reps(experiment.get(), opt.reps); s != MAWI_OK)
            return fail(s);
    if (opt.have_out)
        if (const auto s = mawi_experiment_set_out(experiment.get(), opt.out.c_str());
            s != MAWI_OK)
            return fail(s);
    if (const auto s = mawi_experiment_set_threads(experiment.get(), opt.threads); s != MAWI_OK)
        return fail(s);
    if (const auto s = mawi_experiment_set_quiet(experiment.get(), opt.quiet); s != MAWI_OK)
        return fail(s);

    StringPtr metadata(nullptr, mawi_string_free);
    {
        char *raw = nullptr;
        const mawi_status status = mawi_experiment_run(experiment.get(), &raw);
        if (status != MAWI_OK)
            return fail(status);
        metadata.reset(raw);
    }
    if (!opt.quiet)
    {
        const auto meta = nlohmann::json::parse(metadata.get());
        const auto outputs = meta.at("outputs").get<std::vector<std::string>>();
        std::cout << kind << ": " << meta.at("rows").get<std::size_t>() << " rows -> "
                  << outputs.front() << " (digest " << meta.at("config_digest").get<std::string>()
                  << ", seed " << meta.at("master_seed").get<std::uint64_t>() << ")\n";
        for (std::size_t i = 1; i < outputs.size(); ++i)
            std::cout << "  also wrote " << outputs[i] << "\n";
        std::cout << "  metadata " << outputs.front() << ".meta.json\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    // Results must not depend on ambient threading: all parallelism in this
    // toolkit is task-level with per-task state, and the numeric kernels below
    // it have to stay sequential.
    setenv("OPENBLAS_NUM_THREADS", "1", 1);
    setenv("OMP_NUM_THREADS", "1", 1);

    CLI::App app{"mawi: simulation and optimization for movable-antenna wireless systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("mawi ") + mawi_version());

    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"channel-demo", "Sample one random channel field over a planar region"},
        {"estimate", "Run one sparse channel-estimation instance"},
        {"optimize", "Run one antenna-placement optimization instance"},
        {"wsr-sweep", "Weighted sum rate of placement methods vs. region size"},
        {"nmse-sweep", "Estimator reconstruction error vs. pilot count"},
        {"crb-sweep", "Direction-finding bound vs. array segment length"}};

    int exit_code = 0;
    for (const auto &[kind, description] : kinds)
    {
        auto *sub = app.add_subcommand(kind, description);
        auto state = std::make_shared<SubOptions>();
        sub->add_option("--config", state->config, "experiment configuration JSON file")
            ->check(CLI::ExistingFile);
        auto *seed_opt = sub->add_option("--seed", state->seed, "master seed override");
        auto *reps_opt =
            sub->add_option("--reps", state->reps, "repetition count override (>= 1)");
        auto *out_opt = sub->add_option("--out", state->out, "output CSV path override");
        sub->add_option("--threads", state->threads,
                        "worker threads; any count gives identical output");
        sub->add_flag("--quiet", state->quiet, "suppress the summary lines");
        sub->callback(
            [&exit_code, kind = kind, state, seed_opt, reps_opt, out_opt]
            {
                state->have_seed = seed_opt->count() > 0;
                state->have_reps = reps_opt->count() > 0;
                state->have_out = out_opt->count() > 0;
                exit_code = run_kind(kind, *state);
            });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(MAWI_ERR_CONFIG);
    }
    return exit_code;
}

// SPDX-License-Identifier: Apache-2.0
//
// isac-robust: robust dual-functional waveform design for sensing and communication
// Copyright (C) 2026 The isac-robust authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "isac/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>

#include <iostream>

int main(int argc, char **argv)
{
    using namespace isac::cli;
    spdlog::cfg::load_env_levels(); // SPDLOG_LEVEL=debug etc.

    CLI::App app{"Robust waveform design for integrated sensing and communication"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string out_dir, format;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App *sub)
    {
        sub->add_option("--config", opts.config_path, "Experiment configuration (JSON)")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides io.out_dir)");
        sub->add_option("--seed", seed, "Master seed (overrides montecarlo.master_seed)");
        sub->add_option("--format", format, "Report format (overrides io.format)")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    CLI::App *design = app.add_subcommand("design", "Nominal and robust design for one theta");
    CLI::App *mc = app.add_subcommand("montecarlo", "Coverage simulation over the theta grid");
    add_common(design);
    add_common(mc);

    CLI::App *verify = app.add_subcommand("verify", "Re-check a design output directory");
    std::string artifact_dir;
    VerifyTolerances tol;
    verify->add_option("dir", artifact_dir, "Directory written by 'design'")->required();
    verify->add_option("--feasibility-tol", tol.feasibility, "Constraint residual tolerance")->capture_default_str();
    verify->add_option("--membership-tol", tol.membership, "Relative ball radius slack")->capture_default_str();
    verify->add_option("--bound-tol", tol.bound, "Relative bound tolerance")->capture_default_str();
    verify->add_option("--cost-tol", tol.cost, "Relative cost recomputation tolerance")->capture_default_str();
    verify->add_option("--samples", tol.dominance_samples, "Channels sampled for the dominance check")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    if (!out_dir.empty())
        opts.out_dir = out_dir;
    if (!format.empty())
        opts.format = format_from_string(format);
    if (design->count("--seed") + mc->count("--seed") > 0)
        opts.seed = seed;

    if (*design)
        return cmd_design(opts, std::cout, std::cerr);
    if (*mc)
        return cmd_montecarlo(opts, std::cout, std::cerr);
    return cmd_verify(artifact_dir, tol, std::cout, std::cerr);
}

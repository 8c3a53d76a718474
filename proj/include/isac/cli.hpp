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

#pragma once

#include "isac/robust.hpp"
#include "isac/simkit.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac::cli
{
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_invariant = 1,
        exit_config = 2,
        exit_solver = 3
    };

    // Invalid or missing configuration field; the message starts with the field path.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct ExperimentConfig
    {
        ScenarioSpec scenario;             // system, targets, epsilon, master seed
        double theta = 0.0;
        std::vector<double> theta_grid;    // defaults to {theta}
        Method method = Method::m1_svd_match;
        double rho = 1.0;
        std::vector<double> rho_grid;      // defaults to {rho}
        RobustOptions robust;              // alpha, budget, norm
        bool has_montecarlo = false;
        int episodes = 1000;
        int threads = 1;
        std::string out_dir = "out";
        ReportFormat format = ReportFormat::csv;
    };

    // Parses and validates every field before anything is computed.
    ExperimentConfig parse_config(const std::string &json_text);
    ExperimentConfig load_config(const std::string &path);

    struct CommandOptions
    {
        std::string config_path;
        std::optional<std::string> out_dir;
        std::optional<std::uint64_t> seed;
        std::optional<ReportFormat> format;
    };

    struct VerifyTolerances
    {
        double feasibility = 1e-8;   // relative for COVARIANCE, scaled by L P_T for TPC/PAPC
        double membership = 1e-9;    // relative to the radius
        double bound = 1e-9;         // relative to max(1, |value|)
        double cost = 1e-9;          // relative to max(1, |value|)
        int dominance_samples = 200;
    };

    // Writes H_bar, S, R, X_s, X_nominal, X_robust, H_worst and design.json to the output directory.
    int cmd_design(const CommandOptions &opts, std::ostream &out, std::ostream &err);

    // Writes report.csv or report.json to the output directory.
    int cmd_montecarlo(const CommandOptions &opts, std::ostream &out, std::ostream &err);

    // Re-checks a cmd_design directory; prints one line per violation.
    int cmd_verify(const std::string &dir, const VerifyTolerances &tol, std::ostream &out, std::ostream &err);

    ReportFormat format_from_string(const std::string &name);
    std::string to_string(ReportFormat format);
}

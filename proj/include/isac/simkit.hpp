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

#include "isac/model.hpp"
#include "isac/robust.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace isac
{
    // Per user row: (1/sqrt(P)) sum_p g_p a(phi_p)^T with P uniform in [60, 100].
    Channel make_Href(const SystemConfig &cfg, std::uint64_t seed, std::vector<int> *path_counts = nullptr);

    struct PerturbationModel
    {
        Channel H_ref;
        double epsilon = 0.05;
        std::uint64_t seed = 0;
    };

    // center = H_ref + eps D2 (D2 fixed by the model seed); sample = H_ref + eps D1(episode).
    Channel center_channel(const PerturbationModel &model);
    Channel episode_channel(const PerturbationModel &model, std::uint64_t episode);

    // (H0, H_bar)
    std::pair<Channel, Channel> generate_channels(const PerturbationModel &model, std::uint64_t episode);

    struct ScenarioSpec
    {
        SystemConfig system;
        std::vector<double> target_azimuths_deg{-45.0, 45.0};
        double beam_weight = 0.8;
        double epsilon = 0.05;
        double symbol_power = 1.0;
        std::uint64_t master_seed = 1;
    };

    // Everything fixed before the episode loop.
    struct Scenario
    {
        ScenarioSpec spec;
        PerturbationModel perturbation;
        Channel H_bar;
        Constellation S;
        Covariance R;
        Waveform X_s;
    };

    Scenario build_scenario(const ScenarioSpec &spec);

    // Method dispatch on a scenario.
    DesignResult design(const Scenario &sc, Method method, double theta, double rho, const RobustOptions &opts);

    enum class PercentileRule
    {
        nearest_rank, // sorted[ceil(q n) - 1]
        linear
    };

    double quantile(std::vector<double> samples, double q, PercentileRule rule = PercentileRule::nearest_rank);

    struct Percentiles
    {
        double min, p5, median, p95, max;
    };

    Percentiles percentiles(const std::vector<double> &samples, PercentileRule rule = PercentileRule::nearest_rank);

    struct ThetaResult
    {
        double theta = 0.0;
        double robust_aasr = 0.0;   // AASR at (H*, X*)
        double coverage = 0.0;      // share of episodes with true AASR >= robust AASR
        double gap = 0.0;
        std::vector<double> aasr_true; // AASR at (H0, X*), episode order
        bool failed = false;
        std::string failure;
    };

    struct RhoBlock
    {
        double rho = 1.0;
        double nominal_aasr = 0.0; // AASR at (H_bar, X_bar)
        std::vector<ThetaResult> thetas;
    };

    struct MonteCarloReport
    {
        std::string method;
        int episodes = 0;
        std::vector<RhoBlock> blocks;
        int failures = 0;
    };

    struct MonteCarloSpec
    {
        ScenarioSpec scenario;
        Method method = Method::m1_svd_match;
        std::vector<double> theta_grid;
        std::vector<double> rho_grid{1.0}; // ignored by Methods 1 and 2
        int episodes = 1000;
        RobustOptions robust;
        int threads = 1;
    };

    // Grid start:step:stop inclusive, with round-off guarded at the end point.
    std::vector<double> make_grid(double start, double step, double stop);

    MonteCarloReport run_montecarlo(const MonteCarloSpec &spec);

    enum class ReportFormat
    {
        csv,
        json
    };

    void emit_report(const MonteCarloReport &report, const std::string &path, ReportFormat format);
    MonteCarloReport read_report(const std::string &path, ReportFormat format);
}

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

#include "isac/simkit.hpp"
#include "isac/random.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace isac
{
    namespace
    {
        // Seed streams derived from the master seed.
        enum Stream : std::uint64_t
        {
            stream_href = 1,
            stream_center = 2,
            stream_symbols = 3,
            stream_sensing = 4,
            stream_episode = 5,
            stream_quadmax = 6
        };
    }

    Channel make_Href(const SystemConfig &cfg, std::uint64_t seed, std::vector<int> *path_counts)
    {
        cfg.validate();
        Rng rng(seed);
        std::uniform_int_distribution<int> paths(60, 100);
        std::uniform_real_distribution<double> azimuth(-90.0, 90.0);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        const int K = cfg.users, N = cfg.antennas;
        Channel H = Channel::Zero(K, N);
        if (path_counts)
            path_counts->assign(K, 0);
        for (int k = 0; k < K; ++k)
        {
            const int P = paths(rng);
            if (path_counts)
                (*path_counts)[k] = P;
            for (int p = 0; p < P; ++p)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                const double phi = azimuth(rng);
                H.row(k) += cd(re, im) * steering_vector(N, phi).transpose();
            }
            H.row(k) /= std::sqrt(static_cast<double>(P));
        }
        return H;
    }

    Channel center_channel(const PerturbationModel &model)
    {
        require(model.epsilon >= 0.0, "perturbation epsilon must be >= 0");
        Rng rng(derive_seed(model.seed, stream_center));
        return model.H_ref + model.epsilon * complex_gaussian(model.H_ref.rows(), model.H_ref.cols(), rng);
    }

    Channel episode_channel(const PerturbationModel &model, std::uint64_t episode)
    {
        require(model.epsilon >= 0.0, "perturbation epsilon must be >= 0");
        Rng rng(derive_seed(model.seed, stream_episode, episode));
        return model.H_ref + model.epsilon * complex_gaussian(model.H_ref.rows(), model.H_ref.cols(), rng);
    }

    std::pair<Channel, Channel> generate_channels(const PerturbationModel &model, std::uint64_t episode)
    {
        return {episode_channel(model, episode), center_channel(model)};
    }

    Scenario build_scenario(const ScenarioSpec &spec)
    {
        spec.system.validate();
        require(spec.epsilon >= 0.0, "uncertainty.epsilon must be >= 0");
        const SystemConfig &sys = spec.system;
        Scenario sc;
        sc.spec = spec;
        sc.perturbation = {make_Href(sys, derive_seed(spec.master_seed, stream_href)), spec.epsilon, spec.master_seed};
        sc.H_bar = center_channel(sc.perturbation);
        sc.S = qpsk_constellation(sys.users, sys.frame_length, derive_seed(spec.master_seed, stream_symbols),
                                  spec.symbol_power);
        sc.R = synth_covariance(spec.target_azimuths_deg, spec.beam_weight, sys.antennas, sys.power_watts);
        sc.X_s = synth_sensing_waveform(sc.R, sys.frame_length, derive_seed(spec.master_seed, stream_sensing));
        return sc;
    }

    DesignResult design(const Scenario &sc, Method method, double theta, double rho, const RobustOptions &opts)
    {
        RobustOptions o = opts;
        o.quadmax.seed = derive_seed(sc.spec.master_seed, stream_quadmax);
        const SystemConfig &sys = sc.spec.system;
        switch (method)
        {
        case Method::m1_svd_match:
            return method1_sensing_centric(sys, sc.H_bar, sc.S, sc.R, theta, o);
        case Method::m2_stacked:
            return method2_sensing_centric(sys, sc.H_bar, sc.S, sc.R, theta, o);
        default:
            return method3_joint(sys, sc.H_bar, sc.S, sc.X_s, rho, theta, method, o);
        }
    }

    double quantile(std::vector<double> samples, double q, PercentileRule rule)
    {
        require(!samples.empty(), "quantile: empty sample");
        require(q >= 0.0 && q <= 1.0, "quantile: level must lie in [0, 1]");
        std::sort(samples.begin(), samples.end());
        const std::size_t n = samples.size();
        if (rule == PercentileRule::nearest_rank)
        {
            // Small guard so that e.g. 0.05 * 100 lands on rank 5, not 6.
            const double r = std::ceil(q * static_cast<double>(n) - 1e-9);
            const std::size_t idx = static_cast<std::size_t>(std::clamp(r, 1.0, static_cast<double>(n)));
            return samples[idx - 1];
        }
        const double pos = q * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, n - 1);
        return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
    }

    Percentiles percentiles(const std::vector<double> &samples, PercentileRule rule)
    {
        require(!samples.empty(), "percentiles: empty sample");
        return {quantile(samples, 0.0, rule), quantile(samples, 0.05, rule), quantile(samples, 0.5, rule),
                quantile(samples, 0.95, rule), quantile(samples, 1.0, rule)};
    }

    std::vector<double> make_grid(double start, double step, double stop)
    {
        require(step > 0.0 && stop >= start, "make_grid: needs step > 0 and stop >= start");
        std::vector<double> g;
        const long n = std::lround(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= n; ++i)
            g.push_back(start + static_cast<double>(i) * step);
        return g;
    }

    MonteCarloReport run_montecarlo(const MonteCarloSpec &spec)
    {
        require(spec.episodes >= 1, "montecarlo.episodes must be >= 1");
        require(!spec.theta_grid.empty(), "uncertainty.theta_grid must not be empty");
        const Scenario sc = build_scenario(spec.scenario);
        const SystemConfig &sys = sc.spec.system;
        const double N0 = sys.noise_watts;
        const std::vector<double> rhos = is_joint(spec.method) ? spec.rho_grid : std::vector<double>{1.0};
        require(!rhos.empty(), "method.rho_grid must not be empty");

        MonteCarloReport rep;
        rep.method = to_string(spec.method);
        rep.episodes = spec.episodes;

        // Stage 2: offline designs from H_bar.
        std::vector<std::vector<Waveform>> robust(rhos.size());
        for (std::size_t i = 0; i < rhos.size(); ++i)
        {
            RhoBlock blk;
            blk.rho = rhos[i];
            bool have_nominal = false;
            for (double theta : spec.theta_grid)
            {
                ThetaResult tr;
                tr.theta = theta;
                tr.aasr_true.assign(spec.episodes, std::nan(""));
                Waveform X;
                try
                {
                    const DesignResult d = design(sc, spec.method, theta, rhos[i], spec.robust);
                    X = d.X_robust;
                    tr.robust_aasr = aasr(d.H_worst, d.X_robust, sc.S, N0);
                    tr.gap = d.diagnostics.gap;
                    if (!have_nominal)
                    {
                        blk.nominal_aasr = aasr(sc.H_bar, d.X_nominal, sc.S, N0);
                        have_nominal = true;
                    }
                }
                catch (const std::exception &e)
                {
                    tr.failed = true;
                    tr.failure = e.what();
                    tr.robust_aasr = std::nan("");
                    tr.coverage = std::nan("");
                    ++rep.failures;
                }
                robust[i].push_back(X);
                blk.thetas.push_back(std::move(tr));
            }
            if (!have_nominal)
                blk.nominal_aasr = std::nan("");
            rep.blocks.push_back(std::move(blk));
        }

        // Stage 3: episodes, each a pure function of its derived seed.
        auto run_range = [&](int first, int last)
        {
            for (int e = first; e < last; ++e)
            {
                const Channel H0 = episode_channel(sc.perturbation, static_cast<std::uint64_t>(e));
                for (std::size_t i = 0; i < rhos.size(); ++i)
                    for (std::size_t j = 0; j < spec.theta_grid.size(); ++j)
                    {
                        ThetaResult &tr = rep.blocks[i].thetas[j];
                        if (!tr.failed)
                            tr.aasr_true[e] = aasr(H0, robust[i][j], sc.S, N0);
                    }
            }
        };
        const int threads = std::max(1, std::min(spec.threads, spec.episodes));
        if (threads == 1)
            run_range(0, spec.episodes);
        else
        {
            std::vector<std::jthread> pool;
            const int chunk = (spec.episodes + threads - 1) / threads;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back(run_range, t * chunk, std::min(spec.episodes, (t + 1) * chunk));
        }

        for (RhoBlock &blk : rep.blocks)
            for (ThetaResult &tr : blk.thetas)
            {
                if (tr.failed)
                    continue;
                const auto covered = std::count_if(tr.aasr_true.begin(), tr.aasr_true.end(),
                                                   [&](double a) { return a >= tr.robust_aasr; });
                tr.coverage = static_cast<double>(covered) / static_cast<double>(spec.episodes);
            }
        return rep;
    }
}

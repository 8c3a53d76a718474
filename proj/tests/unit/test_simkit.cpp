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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isac/random.hpp"
#include "isac/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace isac;

namespace
{
    std::filesystem::path scratch_dir()
    {
        const auto p = std::filesystem::temp_directory_path() / "isac_test_simkit";
        std::filesystem::create_directories(p);
        return p;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream is(p, std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    MonteCarloSpec small_run(Method m, int episodes)
    {
        MonteCarloSpec spec;
        spec.method = m;
        spec.episodes = episodes;
        spec.theta_grid = {0.0, 0.05, 0.1, 0.15, 0.2};
        spec.rho_grid = {0.25};
        return spec;
    }

    double iqr(const std::vector<double> &v)
    {
        return quantile(v, 0.75) - quantile(v, 0.25);
    }
}

TEST_CASE("reference channel is deterministic per seed")
{
    SystemConfig cfg;
    std::vector<int> paths_a, paths_b;
    const Channel A = make_Href(cfg, 42, &paths_a);
    const Channel B = make_Href(cfg, 42, &paths_b);
    CHECK(A == B);
    CHECK(paths_a == paths_b);
    CHECK(A != make_Href(cfg, 43));
}

TEST_CASE("reference channel moments and path counts")
{
    SystemConfig cfg;
    double sum_re = 0.0, sum_im = 0.0, sum_sq = 0.0;
    long n = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
    {
        std::vector<int> paths;
        const Channel H = make_Href(cfg, seed, &paths);
        for (int p : paths)
        {
            CHECK(p >= 60);
            CHECK(p <= 100);
        }
        for (Eigen::Index i = 0; i < H.size(); ++i)
        {
            sum_re += H(i).real();
            sum_im += H(i).imag();
            sum_sq += std::norm(H(i));
            ++n;
        }
    }
    // 64000 unit-variance entries: the mean is zero to about 4e-3 per component.
    CHECK(std::abs(sum_re / n) < 0.02);
    CHECK(std::abs(sum_im / n) < 0.02);
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("zero perturbation leaves every channel at the reference")
{
    SystemConfig cfg;
    const PerturbationModel model{make_Href(cfg, 5), 0.0, 9};
    const auto [H0, Hb] = generate_channels(model, 17);
    CHECK(H0 == model.H_ref);
    CHECK(Hb == model.H_ref);
}

TEST_CASE("center is fixed per model and episodes differ")
{
    SystemConfig cfg;
    const PerturbationModel model{make_Href(cfg, 5), 0.05, 9};
    const auto [H0a, Hba] = generate_channels(model, 1);
    const auto [H0b, Hbb] = generate_channels(model, 2);
    CHECK(Hba == Hbb);
    CHECK(H0a != H0b);
    CHECK(H0a == generate_channels(model, 1).first);
}

TEST_CASE("mean squared distance between sample and center")
{
    SystemConfig cfg;
    const Channel Href = make_Href(cfg, 3);
    const double eps = 0.1;
    const int draws = 10000;
    double acc = 0.0;
    for (int i = 0; i < draws; ++i)
    {
        // Fresh center perturbation and fresh episode per draw.
        const PerturbationModel model{Href, eps, derive_seed(77, 1, static_cast<std::uint64_t>(i))};
        const auto [H0, Hb] = generate_channels(model, static_cast<std::uint64_t>(i));
        acc += (H0 - Hb).squaredNorm();
    }
    const double expected = 2.0 * eps * eps * cfg.users * cfg.antennas;
    CHECK(acc / draws == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("epsilon sweep values are accepted")
{
    SystemConfig cfg;
    const Channel Href = make_Href(cfg, 3);
    for (double eps : {0.001, 0.01, 0.05, 0.1, 0.5})
    {
        const PerturbationModel model{Href, eps, 4};
        const auto [H0, Hb] = generate_channels(model, 0);
        CHECK((Hb - Href).norm() > 0.0);
        CHECK((Hb - Href).norm() < 30.0 * eps);
    }
    CHECK_THROWS(center_channel(PerturbationModel{Href, -0.1, 4}));
}

TEST_CASE("nearest-rank percentiles")
{
    std::vector<double> v(100);
    for (int i = 0; i < 100; ++i)
        v[i] = 100.0 - i;
    const Percentiles p = percentiles(v);
    CHECK(p.min == 1.0);
    CHECK(p.p5 == 5.0);
    CHECK(p.median == 50.0);
    CHECK(p.p95 == 95.0);
    CHECK(p.max == 100.0);

    const Percentiles c = percentiles(std::vector<double>(7, 2.5));
    CHECK(c.min == 2.5);
    CHECK(c.p5 == 2.5);
    CHECK(c.median == 2.5);
    CHECK(c.p95 == 2.5);
    CHECK(c.max == 2.5);

    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(100000);
    for (double &x : w)
        x = u(g);
    const double p5 = percentiles(w).p5;
    CHECK(p5 >= 0.045);
    CHECK(p5 <= 0.055);

    CHECK_THROWS(percentiles({}));
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.5, PercentileRule::linear) == doctest::Approx(2.5));
}

TEST_CASE("grid construction")
{
    const std::vector<double> g = make_grid(0.0, 0.01, 0.2);
    REQUIRE(g.size() == 21);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(0.2));
    CHECK(make_grid(0.0, 0.1, 0.0).size() == 1);
    CHECK_THROWS(make_grid(0.0, 0.0, 1.0));
}

TEST_CASE("single episode at zero radius is the nominal evaluation")
{
    for (Method m : {Method::m1_svd_match, Method::m3_tpc})
    {
        MonteCarloSpec spec = small_run(m, 1);
        spec.theta_grid = {0.0};
        const MonteCarloReport rep = run_montecarlo(spec);
        REQUIRE(rep.blocks.size() == 1);
        REQUIRE(rep.blocks[0].thetas.size() == 1);
        const ThetaResult &t = rep.blocks[0].thetas[0];
        REQUIRE(t.aasr_true.size() == 1);
        CHECK(rep.failures == 0);
        CHECK(t.robust_aasr == doctest::Approx(rep.blocks[0].nominal_aasr).epsilon(1e-12));

        const Scenario sc = build_scenario(spec.scenario);
        const DesignResult d = design(sc, m, 0.0, 0.25, spec.robust);
        const Channel H0 = episode_channel(sc.perturbation, 0);
        CHECK(t.aasr_true[0] == doctest::Approx(aasr(H0, d.X_nominal, sc.S, sc.spec.system.noise_watts)));
    }
}

TEST_CASE("report is deterministic and thread invariant")
{
    MonteCarloSpec spec = small_run(Method::m1_svd_match, 30);
    const MonteCarloReport a = run_montecarlo(spec);
    spec.threads = 3;
    const MonteCarloReport b = run_montecarlo(spec);
    const auto dir = scratch_dir();
    emit_report(a, (dir / "a.csv").string(), ReportFormat::csv);
    emit_report(b, (dir / "b.csv").string(), ReportFormat::csv);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

    spec.scenario.master_seed = 2;
    const MonteCarloReport c = run_montecarlo(spec);
    CHECK(c.blocks[0].thetas[0].aasr_true != a.blocks[0].thetas[0].aasr_true);
}

TEST_CASE("report round trip")
{
    MonteCarloSpec spec = small_run(Method::m3_tpc, 12);
    spec.rho_grid = {0.25, 0.75};
    const MonteCarloReport rep = run_montecarlo(spec);
    const auto dir = scratch_dir();

    for (ReportFormat fmt : {ReportFormat::csv, ReportFormat::json})
    {
        const std::string path = (dir / (fmt == ReportFormat::csv ? "rt.csv" : "rt.json")).string();
        emit_report(rep, path, fmt);
        const MonteCarloReport back = read_report(path, fmt);
        CHECK(back.method == rep.method);
        CHECK(back.episodes == rep.episodes);
        CHECK(back.failures == rep.failures);
        REQUIRE(back.blocks.size() == rep.blocks.size());
        for (std::size_t i = 0; i < rep.blocks.size(); ++i)
        {
            CHECK(std::abs(back.blocks[i].rho - rep.blocks[i].rho) <= 1e-15);
            CHECK(std::abs(back.blocks[i].nominal_aasr - rep.blocks[i].nominal_aasr) <= 1e-15);
            REQUIRE(back.blocks[i].thetas.size() == rep.blocks[i].thetas.size());
            for (std::size_t j = 0; j < rep.blocks[i].thetas.size(); ++j)
            {
                const ThetaResult &x = rep.blocks[i].thetas[j], &y = back.blocks[i].thetas[j];
                CHECK(std::abs(x.theta - y.theta) <= 1e-15);
                CHECK(std::abs(x.robust_aasr - y.robust_aasr) <= 1e-15);
                CHECK(std::abs(x.coverage - y.coverage) <= 1e-15);
                REQUIRE(x.aasr_true.size() == y.aasr_true.size());
                for (std::size_t e = 0; e < x.aasr_true.size(); ++e)
                    CHECK(std::abs(x.aasr_true[e] - y.aasr_true[e]) <= 1e-15);
            }
        }
    }

    // One data row per (rho, theta, episode).
    std::ifstream is(dir / "rt.csv");
    std::string line;
    int rows = -1;
    while (std::getline(is, line))
        ++rows;
    CHECK(rows == 2 * 5 * 12);
}

TEST_CASE("empty report writes only the header")
{
    const auto path = scratch_dir() / "empty.csv";
    emit_report(MonteCarloReport{}, path.string(), ReportFormat::csv);
    CHECK(slurp(path) == "method,theta,rho,episode,aasr_true,aasr_nominal,aasr_robust,coverage\n");
    CHECK(read_report(path.string(), ReportFormat::csv).blocks.empty());
    CHECK_THROWS(emit_report(MonteCarloReport{}, "/nonexistent-dir/x.csv", ReportFormat::csv));
    CHECK_THROWS(read_report("/nonexistent-dir/x.csv", ReportFormat::csv));
}

TEST_CASE("coverage grows with the radius")
{
    MonteCarloSpec spec = small_run(Method::m1_svd_match, 200);
    const MonteCarloReport rep = run_montecarlo(spec);
    const auto &th = rep.blocks[0].thetas;
    for (std::size_t j = 1; j < th.size(); ++j)
        CHECK(th[j].coverage >= th[j - 1].coverage);
    CHECK(th.back().coverage > th.front().coverage);
}

TEST_CASE("dispersion of true rates grows with epsilon")
{
    double prev = -1.0;
    for (double eps : {0.001, 0.01, 0.1, 0.5})
    {
        MonteCarloSpec spec = small_run(Method::m1_svd_match, 200);
        spec.theta_grid = {0.0};
        spec.scenario.epsilon = eps;
        const double spread = iqr(run_montecarlo(spec).blocks[0].thetas[0].aasr_true);
        CHECK(spread > prev);
        prev = spread;
    }
}

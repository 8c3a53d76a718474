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

#include "helpers.hpp"
#include "isac/model.hpp"
#include "isac/nominal.hpp"
#include "isac/random.hpp"
#include "isac/simkit.hpp"

#include <cmath>

using namespace isac;
using testing::randn;

namespace
{
    Waveform random_tpc(int N, int L, double P, std::mt19937_64 &g)
    {
        const Waveform X = randn(N, L, g);
        return X * std::sqrt(L * P) / X.norm();
    }

    // min ||H X - S||^2 over X X^H = L R equals L tr(H R H^H) + ||S||^2 - 2 sqrt(L) ||F^H H^H S||_*.
    double closed_form_optimum(const Channel &H, const Constellation &S, const Eigen::MatrixXcd &F, int L)
    {
        const Eigen::MatrixXcd R = F * F.adjoint();
        const double nuclear = Eigen::BDCSVD<Eigen::MatrixXcd>(F.adjoint() * H.adjoint() * S).singularValues().sum();
        return L * (H * R * H.adjoint()).trace().real() + S.squaredNorm() - 2.0 * std::sqrt(double(L)) * nuclear;
    }
}

TEST_CASE("factorize_R")
{
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(3, 3);
    CHECK((factorize_R(I) - I).norm() == 0.0);
    const Eigen::MatrixXcd Rs = (2.5 / 16.0) * Eigen::MatrixXcd::Identity(16, 16);
    CHECK((factorize_R(Rs) - std::sqrt(0.15625) * Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-15);

    std::mt19937_64 g(31);
    for (int t = 0; t < 20; ++t)
    {
        const Eigen::MatrixXcd R = testing::random_covariance(6, 2.0, g);
        const Eigen::MatrixXcd F = factorize_R(R);
        CHECK((F * F.adjoint() - R).norm() <= 1e-12 * R.norm());
        CHECK(F.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm() == 0.0);
    }
    Eigen::MatrixXcd bad = I;
    bad(2, 2) = -1.0;
    CHECK_THROWS_AS(factorize_R(bad), SolverError);
    CHECK_THROWS_AS(factorize_R(Eigen::MatrixXcd::Zero(2, 2)), SolverError);
}

TEST_CASE("zero_forcing")
{
    std::mt19937_64 g(32);
    const Channel Hsq = randn(3, 3, g);
    const Constellation S3 = randn(3, 5, g);
    CHECK((zero_forcing(Hsq, S3) - Hsq.inverse() * S3).norm() < 1e-10);

    const Channel H = randn(4, 16, g);
    const Constellation S = qpsk_constellation(4, 30, 3);
    const Waveform X = zero_forcing(H, S);
    CHECK(mui_energy(H, X, S) <= 1e-18);
    CHECK((H * X - S).norm() <= 1e-10 * S.norm());

    // Rank-deficient channel falls back to the pseudo-inverse.
    Channel Hd = H;
    Hd.row(3) = Hd.row(2);
    const Waveform Xd = zero_forcing(Hd, S);
    CHECK(Xd.allFinite());
    CHECK((Xd - Hd.completeOrthogonalDecomposition().pseudoInverse() * S).norm() < 1e-10 * Xd.norm());
}

TEST_CASE("zero_forcing: default scenario rate is of the expected order of magnitude")
{
    const Scenario sc = build_scenario(ScenarioSpec{});
    const double a = aasr(sc.H_bar, zero_forcing(sc.H_bar, sc.S), sc.S, sc.spec.system.noise_watts);
    // With unit symbol power and N0 = 0.25 the interference-free ceiling is log2(5).
    CHECK(a == doctest::Approx(std::log2(5.0)).epsilon(1e-9));
    CHECK(a > 3.07 / 3.0);
    CHECK(a < 3.07 * 3.0);
}

TEST_CASE("sensing_centric_optimal: scalar case")
{
    Eigen::MatrixXcd H(1, 1), S(1, 1), F(1, 1);
    H << 2.0;
    S << 1.0;
    F << 1.0;
    const Waveform X = sensing_centric_optimal(H, S, F, 1);
    CHECK(std::abs(X(0, 0) - cd(1.0, 0.0)) < 1e-15);
    CHECK(mui_energy(H, X, S) == doctest::Approx(1.0));
}

TEST_CASE("sensing_centric_optimal: feasibility, closed-form optimum and sampling dominance")
{
    std::mt19937_64 g(33);
    Rng rng(34);
    const int K = 2, N = 4, L = 8;
    for (int t = 0; t < 30; ++t)
    {
        const Eigen::MatrixXcd R = testing::random_covariance(N, 1.0, g);
        const Eigen::MatrixXcd F = factorize_R(R);
        const Channel H = randn(K, N, g);
        const Constellation S = randn(K, L, g);
        const Waveform X = sensing_centric_optimal(H, S, F, L);
        CHECK((X * X.adjoint() - L * R).norm() <= 1e-9 * L * R.norm());
        const double cost = mui_energy(H, X, S);
        CHECK(cost == doctest::Approx(closed_form_optimum(H, S, F, L)).epsilon(1e-9));
        for (int i = 0; i < 200; ++i)
        {
            const Waveform Y = std::sqrt(double(L)) * F * random_semi_unitary(N, L, rng);
            REQUIRE(cost <= mui_energy(H, Y, S) + 1e-9);
        }
    }
}

TEST_CASE("synth_sensing_waveform and canonical waveform")
{
    const int N = 6, L = 10;
    const double P = 2.5;
    const Covariance R = synth_covariance({-45.0, 45.0}, 0.7, N, P);
    const Waveform Xc = canonical_sensing_waveform(R, L);
    CHECK((Xc.rightCols(L - N)).norm() == 0.0);
    CHECK(check_power(Xc, CovarianceMatch{R}, 1e-12).ok);
    for (std::uint64_t seed : {1u, 2u, 3u})
    {
        const Waveform Xs = synth_sensing_waveform(R, L, seed);
        CHECK(check_power(Xs, CovarianceMatch{R}, 1e-10).ok);
        CHECK(Xs.squaredNorm() / L == doctest::Approx(P).epsilon(1e-12));
        CHECK(Xs == synth_sensing_waveform(R, L, seed));
    }
    CHECK_THROWS_AS(synth_sensing_waveform(R, N - 1, 1), DimensionError);
}

TEST_CASE("synth_covariance")
{
    const int N = 16;
    const double P = 2.5;
    const Covariance R0 = synth_covariance({-45.0, 45.0}, 0.0, N, P);
    CHECK((R0 - (P / N) * Eigen::MatrixXcd::Identity(N, N)).norm() < 1e-15);
    const Covariance R = synth_covariance({-45.0, 45.0}, 0.8, N, P);
    CHECK(std::abs(R.trace().real() - P) <= 1e-12);
    CHECK((R - R.adjoint()).norm() == 0.0);
    const std::vector<double> gain = beampattern(R, {-45.0, 0.0, 45.0});
    CHECK(gain[0] > gain[1]);
    CHECK(gain[2] > gain[1]);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(R).eigenvalues().minCoeff() > 0.0);
    CHECK_THROWS_AS(synth_covariance({0.0}, 1.0, N, P), DimensionError);
}

TEST_CASE("joint_tpc: pure sensing weight returns the scaled sensing waveform")
{
    std::mt19937_64 g(35);
    const int K = 3, N = 5, L = 9;
    const double P = 2.0;
    const Channel H = randn(K, N, g);
    const Constellation S = randn(K, L, g);
    const Waveform Xs = randn(N, L, g);
    const Waveform X = joint_tpc(H, S, Xs, 0.0, P, L);
    CHECK((X - std::sqrt(L * P) * Xs / Xs.norm()).norm() < 1e-10 * X.norm());
    const Waveform Xf = std::sqrt(L * P) * Xs / Xs.norm();
    CHECK((joint_tpc(H, S, Xf, 0.0, P, L) - Xf).norm() < 1e-10 * Xf.norm());
}

TEST_CASE("joint_tpc: feasibility, global optimality certificate and sampling dominance")
{
    std::mt19937_64 g(36);
    const int K = 3, N = 6, L = 10;
    const double P = 1.5;
    for (int t = 0; t < 40; ++t)
    {
        const double rho = (t % 5 == 4) ? 1.0 : 0.2 * (t % 5) + 0.1;
        const Channel H = randn(K, N, g);
        const Constellation S = randn(K, L, g);
        const Waveform Xs = random_tpc(N, L, P, g);
        const Waveform X = joint_tpc(H, S, Xs, rho, P, L);
        CHECK(check_power(X, TotalPower{P}, 1e-9).ok);

        // Stationarity (A + lambda I) X = B with A + lambda I positive semidefinite certifies a global minimum.
        const Eigen::MatrixXcd A = rho * H.adjoint() * H + (1.0 - rho) * Eigen::MatrixXcd::Identity(N, N);
        const Eigen::MatrixXcd B = rho * H.adjoint() * S + (1.0 - rho) * Xs;
        const Eigen::MatrixXcd Rm = B - A * X;
        const double lambda = (X.adjoint() * Rm).trace().real() / X.squaredNorm();
        CHECK((Rm - lambda * X).norm() <= 1e-7 * std::max(1.0, B.norm()));
        const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(A).eigenvalues().minCoeff();
        CHECK(lmin + lambda >= -1e-7 * std::max(1.0, A.norm()));

        const double f = joint_objective(H, S, Xs, rho, X);
        for (int i = 0; i < 100; ++i)
            REQUIRE(f <= joint_objective(H, S, Xs, rho, random_tpc(N, L, P, g)) + 1e-9);
        const Waveform Xzf = zero_forcing(H, S);
        CHECK(f <= joint_objective(H, S, Xs, rho, Xzf * std::sqrt(L * P) / Xzf.norm()) + 1e-9);
        CHECK(f <= joint_objective(H, S, Xs, rho, Xs) + 1e-9);
    }
}

TEST_CASE("joint_tpc: hard case with a unit weight on interference")
{
    std::mt19937_64 g(37);
    const int K = 2, N = 5, L = 7;
    const double P = 3.0;
    const Channel H = randn(K, N, g);
    const Constellation S = 0.01 * randn(K, L, g);
    const Waveform Xs = random_tpc(N, L, P, g);
    const Waveform X = joint_tpc(H, S, Xs, 1.0, P, L);
    CHECK(check_power(X, TotalPower{P}, 1e-9).ok);
    const Waveform Xzf = zero_forcing(H, S);
    CHECK(mui_energy(H, X, S) <= mui_energy(H, Xzf * std::sqrt(L * P) / Xzf.norm(), S) + 1e-9);
    for (int i = 0; i < 200; ++i)
        REQUIRE(mui_energy(H, X, S) <= mui_energy(H, random_tpc(N, L, P, g), S) + 1e-9);
}

TEST_CASE("joint_papc")
{
    std::mt19937_64 g(38);
    const int K = 3, N = 6, L = 10;
    const double P = 2.5;
    SUBCASE("feasible sensing waveform is a fixed point at zero weight")
    {
        const Waveform Xs = project_rows(randn(N, L, g), P);
        const PapcResult r = joint_papc(randn(K, N, g), randn(K, L, g), Xs, 0.0, P);
        CHECK((r.X - Xs).norm() < 1e-12 * Xs.norm());
    }
    SUBCASE("rows feasible, monotone objective, beats projected baselines")
    {
        for (int t = 0; t < 20; ++t)
        {
            const double rho = 0.05 + 0.9 * (t % 4) / 3.0;
            const Channel H = randn(K, N, g);
            const Constellation S = randn(K, L, g);
            const Waveform Xs = project_rows(randn(N, L, g), P);
            const PapcResult r = joint_papc(H, S, Xs, rho, P);
            CHECK(check_power(r.X, PerAntennaPower{P}, 1e-8).ok);
            for (std::size_t i = 1; i < r.objective.size(); ++i)
                REQUIRE(r.objective[i] <= r.objective[i - 1] * (1.0 + 1e-14));
            const double f = joint_objective(H, S, Xs, rho, r.X);
            CHECK(f == doctest::Approx(r.objective.back()).epsilon(1e-12));
            CHECK(f <= joint_objective(H, S, Xs, rho, project_rows(zero_forcing(H, S), P)) + 1e-9);
            CHECK(f <= joint_objective(H, S, Xs, rho, Xs) + 1e-9);
            CHECK(r.iterations <= 500);
        }
    }
    SUBCASE("custom start is honoured and never worsened")
    {
        const Channel H = randn(K, N, g);
        const Constellation S = randn(K, L, g);
        const Waveform Xs = project_rows(randn(N, L, g), P);
        const Waveform X0 = project_rows(randn(N, L, g), P);
        PapcOptions o;
        o.init = &X0;
        const PapcResult r = joint_papc(H, S, Xs, 0.6, P, o);
        CHECK(r.objective.front() == doctest::Approx(joint_objective(H, S, Xs, 0.6, X0)));
        CHECK(r.objective.back() <= r.objective.front());
    }
}

TEST_CASE("joint_tpc: median rate does not fall as the communication weight grows")
{
    ScenarioSpec spec;
    spec.system = {4, 16, 30, 2.5, 0.25, 0.0};
    double last = -1.0;
    for (double rho : {0.05, 0.2, 0.5, 0.9})
    {
        std::vector<double> rates;
        for (std::uint64_t seed = 1; seed <= 25; ++seed)
        {
            spec.master_seed = seed;
            const Scenario sc = build_scenario(spec);
            const Waveform X = joint_tpc(sc.H_bar, sc.S, sc.X_s, rho, 2.5, 30);
            rates.push_back(aasr(sc.H_bar, X, sc.S, 0.25));
        }
        const double med = quantile(rates, 0.5);
        CHECK(med >= last);
        last = med;
    }
}

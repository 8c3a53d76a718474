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
#include "isac/matrix_io.hpp"
#include "isac/random.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

namespace isac::cli
{
    namespace
    {
        namespace fs = std::filesystem;
        using nlohmann::json;

        constexpr std::uint64_t verify_seed = 0x7e51f1ed;

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            return buf;
        }

        // Maps exceptions onto exit codes.
        int guarded(std::ostream &err, const std::function<int()> &body)
        {
            try
            {
                return body();
            }
            catch (const ConfigError &e)
            {
                err << "config error: " << e.what() << '\n';
                return exit_config;
            }
            catch (const DimensionError &e)
            {
                err << "config error: " << e.what() << '\n';
                return exit_config;
            }
            catch (const SolverError &e)
            {
                err << "solver failure: " << e.what() << '\n';
                return exit_solver;
            }
            catch (const std::exception &e)
            {
                err << "error: " << e.what() << '\n';
                return exit_solver;
            }
        }

        ExperimentConfig resolve(const CommandOptions &opts)
        {
            ExperimentConfig c = load_config(opts.config_path);
            if (opts.out_dir)
                c.out_dir = *opts.out_dir;
            if (opts.seed)
                c.scenario.master_seed = *opts.seed;
            if (opts.format)
                c.format = *opts.format;
            return c;
        }

        void make_dir(const std::string &dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
        }

        json bound_json(const BoundReport &d)
        {
            return {{"L_f", d.L_f},
                    {"L_g", d.L_g},
                    {"f_upper_at_center", d.f_upper_at_center},
                    {"f_at_center", d.f_at_center},
                    {"gap", d.gap},
                    {"waveform_shift", d.waveform_shift},
                    {"svd_residual", d.svd_residual},
                    {"quadmax_iterations", d.quadmax_iterations},
                    {"quadmax_restarts", d.quadmax_restarts},
                    {"quadmax_certified", d.quadmax_certified},
                    {"remedy_iterations", d.remedy_iterations},
                    {"remedy_converged", d.remedy_converged}};
        }

        // Uniform in the ball for half the draws, on the boundary for the rest.
        Channel sample_in_ball(const Channel &center, double radius, NormKind norm, bool boundary, Rng &rng)
        {
            const Eigen::Index K = center.rows(), N = center.cols();
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            if (norm == NormKind::frobenius)
            {
                Channel D = complex_gaussian(K, N, rng);
                D /= D.norm();
                const double r = boundary ? 1.0 : std::pow(unif(rng), 1.0 / static_cast<double>(2 * K * N));
                return center + radius * r * D;
            }
            Channel D(K, N);
            for (Eigen::Index j = 0; j < N; ++j)
                for (Eigen::Index i = 0; i < K; ++i)
                    D(i, j) = cd(2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0);
            if (boundary)
                D /= channel_norm(D, NormKind::entry_infinity);
            return center + radius * D;
        }

        double rel(double a, double b)
        {
            return std::abs(a - b) / std::max(1.0, std::abs(b));
        }
    }

    int cmd_design(const CommandOptions &opts, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
        {
            const ExperimentConfig c = resolve(opts);
            const Scenario sc = build_scenario(c.scenario);
            const DesignResult d = design(sc, c.method, c.theta, c.rho, c.robust);
            const double N0 = c.scenario.system.noise_watts;
            const double robust_aasr = aasr(d.H_worst, d.X_robust, sc.S, N0);
            const double nominal_aasr = aasr(sc.H_bar, d.X_nominal, sc.S, N0);

            make_dir(c.out_dir);
            const fs::path dir(c.out_dir);
            write_matrix((dir / "H_bar.txt").string(), sc.H_bar);
            write_matrix((dir / "S.txt").string(), sc.S);
            write_matrix((dir / "R.txt").string(), sc.R);
            write_matrix((dir / "X_s.txt").string(), sc.X_s);
            write_matrix((dir / "X_nominal.txt").string(), d.X_nominal);
            write_matrix((dir / "X_robust.txt").string(), d.X_robust);
            write_matrix((dir / "H_worst.txt").string(), d.H_worst);

            const SystemConfig &sys = c.scenario.system;
            json j;
            j["method"] = to_string(d.method);
            j["theta"] = d.theta;
            j["rho"] = d.rho;
            j["budget"] = c.robust.budget;
            j["norm"] = isac::to_string(c.robust.norm);
            j["alpha"] = c.robust.alpha;
            j["master_seed"] = c.scenario.master_seed;
            j["system"] = {{"users", sys.users},
                           {"antennas", sys.antennas},
                           {"frame_length", sys.frame_length},
                           {"power_watts", sys.power_watts},
                           {"noise_watts", sys.noise_watts}};
            j["cost_nominal"] = d.cost_nominal;
            j["cost_robust"] = d.cost_robust;
            j["aasr_nominal"] = nominal_aasr;
            j["aasr_robust"] = robust_aasr;
            j["bounds"] = bound_json(d.diagnostics);
            std::ofstream os(dir / "design.json");
            os << j.dump(2) << '\n';
            if (!os)
                throw std::runtime_error("write failed for '" + (dir / "design.json").string() + "'");

            out << "method        " << to_string(d.method) << '\n'
                << "theta         " << fmt(d.theta) << '\n'
                << "rho           " << fmt(d.rho) << '\n'
                << "cost_nominal  " << fmt(d.cost_nominal) << '\n'
                << "cost_robust   " << fmt(d.cost_robust) << '\n'
                << "robust_aasr   " << fmt(robust_aasr) << '\n';
            if (!d.diagnostics.quadmax_certified)
                spdlog::warn("worst-case search ended without a global certificate");
            return static_cast<int>(exit_ok);
        });
    }

    int cmd_montecarlo(const CommandOptions &opts, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
        {
            const ExperimentConfig c = resolve(opts);
            if (!c.has_montecarlo)
                throw ConfigError("montecarlo: missing required section");
            MonteCarloSpec spec;
            spec.scenario = c.scenario;
            spec.method = c.method;
            spec.theta_grid = c.theta_grid;
            spec.rho_grid = c.rho_grid;
            spec.episodes = c.episodes;
            spec.robust = c.robust;
            spec.threads = c.threads;
            const MonteCarloReport rep = run_montecarlo(spec);

            make_dir(c.out_dir);
            const fs::path path = fs::path(c.out_dir) / (c.format == ReportFormat::csv ? "report.csv" : "report.json");
            emit_report(rep, path.string(), c.format);

            for (const RhoBlock &b : rep.blocks)
                for (const ThetaResult &t : b.thetas)
                {
                    out << rep.method << " rho " << fmt(b.rho) << " theta " << fmt(t.theta);
                    if (t.failed)
                        out << " FAILED " << t.failure << '\n';
                    else
                        out << " coverage " << fmt(t.coverage) << " robust_aasr " << fmt(t.robust_aasr) << '\n';
                }
            out << "report " << path.string() << '\n';
            return static_cast<int>(rep.failures == 0 ? exit_ok : exit_solver);
        });
    }

    int cmd_verify(const std::string &dir_name, const VerifyTolerances &tol, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
        {
            const fs::path dir(dir_name);
            json j;
            {
                std::ifstream is(dir / "design.json");
                if (!is)
                    throw ConfigError("verify: cannot read '" + (dir / "design.json").string() + "'");
                try
                {
                    j = json::parse(is);
                }
                catch (const json::exception &e)
                {
                    throw ConfigError(std::string("verify: design.json: ") + e.what());
                }
            }
            auto load = [&](const char *name) { return read_matrix((dir / name).string()); };
            const Channel H_bar = load("H_bar.txt"), H_worst = load("H_worst.txt");
            const Constellation S = load("S.txt");
            const Covariance R = load("R.txt");
            const Waveform X_s = load("X_s.txt"), X_nom = load("X_nominal.txt"), X_rob = load("X_robust.txt");

            const Method method = method_from_string(j.at("method").get<std::string>());
            const double theta = j.at("theta").get<double>();
            const double rho = j.at("rho").get<double>();
            const double budget = j.at("budget").get<double>();
            const NormKind norm = norm_kind_from_string(j.at("norm").get<std::string>());
            const json &js = j.at("system");
            const int K = js.at("users").get<int>(), N = js.at("antennas").get<int>();
            const int L = js.at("frame_length").get<int>();
            const double P = js.at("power_watts").get<double>();

            std::vector<std::string> violations;
            auto flag = [&](const std::string &name, const std::string &detail)
            { violations.push_back(name + " " + detail); };

            const bool shapes = H_bar.rows() == K && H_bar.cols() == N && H_worst.rows() == K &&
                                H_worst.cols() == N && S.rows() == K && S.cols() == L && R.rows() == N &&
                                R.cols() == N && X_nom.rows() == N && X_nom.cols() == L && X_rob.rows() == N &&
                                X_rob.cols() == L && X_s.rows() == N && X_s.cols() == L;
            if (!shapes)
            {
                out << "SHAPE artifact dimensions disagree with design.json\n";
                return static_cast<int>(exit_invariant);
            }

            // Feasibility of both waveforms.
            PowerConstraint constraint = CovarianceMatch{R};
            double ftol = tol.feasibility;
            if (method == Method::m3_tpc)
            {
                constraint = TotalPower{P};
                ftol *= P;
            }
            else if (method == Method::m3_papc)
            {
                constraint = PerAntennaPower{P};
                ftol *= L * P / N;
            }
            for (const auto &[name, X] : {std::pair<const char *, const Waveform *>{"X_nominal", &X_nom},
                                          {"X_robust", &X_rob}})
            {
                const PowerCheck pc = check_power(*X, constraint, ftol);
                if (!pc.ok)
                    flag(pc.mode, "residual " + fmt(pc.residual) + " for " + name);
            }

            // Worst-case channel lies in the ball.
            const UncertaintySet U{H_bar, theta, budget, norm};
            if (!membership(U, H_worst, tol.membership))
                flag("MEMBERSHIP", "||H_worst - H_bar|| = " + fmt(channel_norm(H_worst - H_bar, norm)) +
                                       " exceeds radius " + fmt(U.effective_radius()));

            // Recorded costs.
            const bool joint = is_joint(method);
            const double c_nom = joint ? joint_objective(H_bar, S, X_s, rho, X_nom) : mui_energy(H_bar, X_nom, S);
            const double c_rob = joint ? joint_objective(H_worst, S, X_s, rho, X_rob) : mui_energy(H_worst, X_rob, S);
            if (rel(c_nom, j.at("cost_nominal").get<double>()) > tol.cost)
                flag("COST", "cost_nominal recomputes to " + fmt(c_nom));
            if (rel(c_rob, j.at("cost_robust").get<double>()) > tol.cost)
                flag("COST", "cost_robust recomputes to " + fmt(c_rob));

            auto above = [&](double a, double b) { return a > b + tol.bound * std::max(1.0, std::abs(b)); };
            if (!joint)
            {
                // lower <= f <= upper at H_worst, with equality of f and upper at H_bar.
                const Eigen::MatrixXcd F = factorize_R(R);
                const double f_w = optimal_cost(H_worst, S, F, L);
                const CostBounds b = bounds_f(H_worst, X_nom, S, R, L);
                if (above(f_w, b.upper) || above(b.lower, f_w))
                    flag("BOUND", "f(H_worst) = " + fmt(f_w) + " outside [" + fmt(b.lower) + ", " + fmt(b.upper) + "]");
                const double f_c = optimal_cost(H_bar, S, F, L);
                if (rel(f_c, mui_energy(H_bar, X_nom, S)) > tol.bound)
                    flag("BOUND", "f(H_bar) = " + fmt(f_c) + " differs from its upper bound");
                if (above(f_w, c_rob))
                    flag("BOUND", "robust cost " + fmt(c_rob) + " below the optimum " + fmt(f_w));
            }
            else
            {
                // The robust step starts from X_nominal and cannot increase the objective at H_worst.
                const double at_nominal = joint_objective(H_worst, S, X_s, rho, X_nom);
                if (above(c_rob, at_nominal))
                    flag("BOUND", "robust cost " + fmt(c_rob) + " exceeds nominal cost at H_worst " + fmt(at_nominal));
            }

            // No sampled channel in the ball beats H_worst at X_nominal.
            const double worst = mui_energy(H_worst, X_nom, S);
            Rng rng(verify_seed);
            int beaten = 0;
            for (int i = 0; i < tol.dominance_samples; ++i)
            {
                const Channel H = sample_in_ball(H_bar, U.effective_radius(), norm, i % 2 == 1, rng);
                if (above(mui_energy(H, X_nom, S), worst))
                    ++beaten;
            }
            if (beaten > 0)
                flag("DOMINANCE", std::to_string(beaten) + " sampled channels exceed the worst-case cost");

            for (const std::string &v : violations)
                out << v << '\n';
            out << (violations.empty() ? "verify: all checks passed" : "verify: violations found") << '\n';
            return static_cast<int>(violations.empty() ? exit_ok : exit_invariant);
        });
    }
}

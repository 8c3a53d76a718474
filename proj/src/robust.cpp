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

#include "isac/robust.hpp"
#include "isac/complexify.hpp"

#include <cmath>

namespace isac
{
    std::string to_string(Method m)
    {
        switch (m)
        {
        case Method::m1_svd_match:
            return "M1";
        case Method::m2_stacked:
            return "M2";
        case Method::m3_tpc:
            return "M3-TPC";
        case Method::m3_papc:
            return "M3-PAPC";
        }
        return "?";
    }

    Method method_from_string(const std::string &name)
    {
        if (name == "M1")
            return Method::m1_svd_match;
        if (name == "M2")
            return Method::m2_stacked;
        if (name == "M3-TPC")
            return Method::m3_tpc;
        if (name == "M3-PAPC")
            return Method::m3_papc;
        throw DimensionError("unknown method '" + name + "' (expected M1, M2, M3-TPC or M3-PAPC)");
    }

    bool is_joint(Method m)
    {
        return m == Method::m3_tpc || m == Method::m3_papc;
    }

    double norm_constant(NormKind kind, int K, int N)
    {
        return kind == NormKind::frobenius ? 1.0 : std::sqrt(2.0 * K * N);
    }

    double lipschitz_Lf(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S, double theta,
                        NormKind kind)
    {
        require(theta >= 0.0, "lipschitz_Lf: negative radius");
        const double B = norm_constant(kind, static_cast<int>(H_bar.rows()), static_cast<int>(H_bar.cols()));
        const double L = cfg.frame_length, P = cfg.power_watts;
        return 2.0 * B * L * P * (H_bar.norm() + B * theta) + 2.0 * B * std::sqrt(L * P) * S.norm();
    }

    CostBounds bounds_f(const Channel &H, const Waveform &X_bar, const Constellation &S, const Covariance &R, int L)
    {
        const double upper = (H * X_bar - S).squaredNorm();
        const double energy = std::max(0.0, L * (H.adjoint() * H * R).trace().real());
        const double root = std::sqrt(energy) - S.norm();
        return {upper, root * root};
    }

    double optimal_cost(const Channel &H, const Constellation &S, const Eigen::MatrixXcd &F, int L)
    {
        return mui_energy(H, sensing_centric_optimal(H, S, F, L), S);
    }

    WorstCase worst_case_channel(const Waveform &X_eff, const Constellation &S, const Channel &H_center, double scale,
                                 double radius, NormKind norm, const QuadMaxOptions &opts)
    {
        const QuadMaxInstance inst = build_quadmax_instance(X_eff, S, H_center, scale);
        QuadMaxProblem pb{inst.C, inst.s, inst.h_center, radius, norm};
        WorstCase wc{Channel(), solve_quadmax(pb, opts)};
        wc.H = unstack_channel(wc.solve.h, H_center.rows(), H_center.cols());
        return wc;
    }

    namespace
    {
        void check_inputs(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S, double theta,
                          const RobustOptions &opts)
        {
            cfg.validate();
            require(H_bar.rows() == cfg.users && H_bar.cols() == cfg.antennas, "center channel must be K x N");
            require(S.rows() == cfg.users && S.cols() == cfg.frame_length, "constellation must be K x L");
            require(theta >= 0.0 && std::isfinite(theta), "uncertainty.theta must be finite and >= 0");
            require(opts.budget >= 0.0 && opts.budget <= 1.0, "uncertainty.budget must lie in [0, 1]");
            require(opts.alpha >= 0.0, "method.alpha must be >= 0");
        }

        void fill_worst(DesignResult &r, const WorstCase &wc)
        {
            r.H_worst = wc.H;
            r.diagnostics.quadmax_iterations = wc.solve.trace.iterations;
            r.diagnostics.quadmax_restarts = wc.solve.trace.restarts;
            r.diagnostics.quadmax_certified = wc.solve.trace.global_certified;
        }

        DesignResult sensing_centric(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S,
                                     const Covariance &R, double theta, const RobustOptions &opts, bool stacked)
        {
            check_inputs(cfg, H_bar, S, theta, opts);
            const int L = cfg.frame_length;
            const Eigen::MatrixXcd F = factorize_R(R);
            const Eigen::MatrixXcd A_bar = sensing_centric_factor(H_bar, S, F);

            DesignResult r;
            r.method = stacked ? Method::m2_stacked : Method::m1_svd_match;
            r.theta = theta;
            r.rho = 1.0;
            r.X_nominal = std::sqrt(static_cast<double>(L)) * F * A_bar;

            const WorstCase wc = worst_case_channel(F * A_bar, S, H_bar, std::sqrt(static_cast<double>(L)),
                                                    opts.budget * theta, opts.norm, opts.quadmax);
            fill_worst(r, wc);

            if (stacked && r.H_worst == H_bar)
                r.X_robust = r.X_nominal; // both stacked terms vanish at the nominal waveform
            else if (stacked)
                r.X_robust = remedy_stacked(r.H_worst, r.X_nominal, F, S, opts.alpha, L);
            else
            {
                const RemedyResult rem = remedy_svd_match(r.H_worst, F, S, A_bar, opts.alpha, opts.remedy);
                r.X_robust = remedy_waveform(F, rem.triple);
                r.diagnostics.remedy_iterations = rem.trace.iterations;
                r.diagnostics.remedy_converged = rem.trace.converged;
                r.diagnostics.svd_residual = rem.svd_residual;
            }

            r.cost_nominal = mui_energy(H_bar, r.X_nominal, S);
            r.cost_robust = mui_energy(r.H_worst, r.X_robust, S);
            BoundReport &d = r.diagnostics;
            d.L_f = lipschitz_Lf(cfg, H_bar, S, theta, opts.norm);
            d.L_g = d.L_f;
            d.f_upper_at_center = r.cost_nominal;
            d.f_at_center = optimal_cost(H_bar, S, F, L);
            d.gap = gap_diagnostic(r.H_worst, r.X_nominal, r.X_robust, S);
            d.waveform_shift = (r.X_robust - r.X_nominal).norm();
            return r;
        }
    }

    DesignResult method1_sensing_centric(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S,
                                         const Covariance &R, double theta, const RobustOptions &opts)
    {
        return sensing_centric(cfg, H_bar, S, R, theta, opts, false);
    }

    DesignResult method2_sensing_centric(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S,
                                         const Covariance &R, double theta, const RobustOptions &opts)
    {
        return sensing_centric(cfg, H_bar, S, R, theta, opts, true);
    }

    DesignResult method3_joint(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S,
                               const Waveform &X_s, double rho, double theta, Method constraint,
                               const RobustOptions &opts)
    {
        check_inputs(cfg, H_bar, S, theta, opts);
        require(is_joint(constraint), "method3_joint: constraint must be M3-TPC or M3-PAPC");
        require(rho >= 0.0 && rho <= 1.0, "method.rho must lie in [0, 1]");
        require(X_s.rows() == cfg.antennas && X_s.cols() == cfg.frame_length, "sensing waveform must be N x L");
        const int L = cfg.frame_length, N = cfg.antennas;
        const double P = cfg.power_watts;
        const bool tpc = constraint == Method::m3_tpc;

        DesignResult r;
        r.method = constraint;
        r.theta = theta;
        r.rho = rho;

        PapcResult nominal_papc;
        if (tpc)
            r.X_nominal = joint_tpc(H_bar, S, X_s, rho, P, L);
        else
        {
            nominal_papc = joint_papc(H_bar, S, X_s, rho, P, opts.papc);
            r.X_nominal = nominal_papc.X;
        }

        const WorstCase wc = worst_case_channel(r.X_nominal, S, H_bar, 1.0, opts.budget * theta, opts.norm,
                                                opts.quadmax);
        fill_worst(r, wc);

        // alpha/(alpha+1) ||Ht X - St||^2 + 1/(alpha+1) ||X - X_bar||^2 is a joint objective anchored at X_bar.
        const double rho_anchor = opts.alpha / (opts.alpha + 1.0);
        Eigen::MatrixXcd Ht(cfg.users + N, N), St(cfg.users + N, L);
        Ht << std::sqrt(rho) * r.H_worst, std::sqrt(1.0 - rho) * Eigen::MatrixXcd::Identity(N, N);
        St << std::sqrt(rho) * S, std::sqrt(1.0 - rho) * X_s;
        if (tpc)
            r.X_robust = joint_tpc(Ht, St, r.X_nominal, rho_anchor, P, L);
        else
        {
            PapcOptions po = opts.papc;
            po.init = &r.X_nominal;
            const PapcResult pr = joint_papc(Ht, St, r.X_nominal, rho_anchor, P, po);
            r.X_robust = pr.X;
            r.diagnostics.remedy_iterations = pr.iterations;
            r.diagnostics.remedy_converged = pr.converged;
        }

        r.cost_nominal = joint_objective(H_bar, S, X_s, rho, r.X_nominal);
        r.cost_robust = joint_objective(r.H_worst, S, X_s, rho, r.X_robust);
        BoundReport &d = r.diagnostics;
        d.L_f = lipschitz_Lf(cfg, H_bar, S, theta, opts.norm);
        d.L_g = rho * d.L_f;
        d.f_upper_at_center = r.cost_nominal;
        d.f_at_center = r.cost_nominal;
        d.gap = gap_diagnostic(r.H_worst, r.X_nominal, r.X_robust, S);
        d.waveform_shift = (r.X_robust - r.X_nominal).norm();
        return r;
    }

    double gap_diagnostic(const Channel &H_worst, const Waveform &X_bar, const Waveform &X_robust,
                          const Constellation &S)
    {
        return (H_worst * X_bar - S).squaredNorm() - (H_worst * X_robust - S).squaredNorm();
    }
}

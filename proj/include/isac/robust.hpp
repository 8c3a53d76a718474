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
#include "isac/nominal.hpp"
#include "isac/quadmax.hpp"
#include "isac/remedy.hpp"

#include <cstdint>
#include <string>

namespace isac
{
    enum class Method
    {
        m1_svd_match,
        m2_stacked,
        m3_tpc,
        m3_papc
    };

    std::string to_string(Method m);
    Method method_from_string(const std::string &name);
    bool is_joint(Method m);

    struct RobustOptions
    {
        double alpha = 1e4;
        double budget = 1.0;
        NormKind norm = NormKind::frobenius;
        QuadMaxOptions quadmax;
        RemedyOptions remedy;
        PapcOptions papc;
    };

    struct BoundReport
    {
        double L_f = 0.0;
        double L_g = 0.0;
        double f_upper_at_center = 0.0;
        double f_at_center = 0.0;
        double gap = 0.0;              // ||H* X_bar - S||^2 - ||H* X* - S||^2
        double waveform_shift = 0.0;   // ||X* - X_bar||_F
        double svd_residual = 0.0;     // Method 1 only
        int quadmax_iterations = 0;
        int quadmax_restarts = 0;
        bool quadmax_certified = false;
        int remedy_iterations = 0;
        bool remedy_converged = true;
    };

    struct DesignResult
    {
        Method method = Method::m1_svd_match;
        double theta = 0.0;
        double rho = 1.0;
        Waveform X_nominal;
        Waveform X_robust;
        Channel H_worst;
        double cost_nominal = 0.0;
        double cost_robust = 0.0;
        BoundReport diagnostics;
    };

    // 1 for the Frobenius norm, sqrt(2KN) for the entry-infinity norm.
    double norm_constant(NormKind kind, int K, int N);

    // 2 B L P_T (||H_bar||_F + B theta) + 2 B sqrt(L P_T) ||S||_F
    double lipschitz_Lf(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S, double theta,
                        NormKind kind = NormKind::frobenius);

    struct CostBounds
    {
        double upper; // ||H X_bar - S||^2
        double lower; // (sqrt(L tr(H^H H R)) - ||S||_F)^2
    };

    CostBounds bounds_f(const Channel &H, const Waveform &X_bar, const Constellation &S, const Covariance &R, int L);

    // min over the covariance-constrained set of ||H X - S||^2.
    double optimal_cost(const Channel &H, const Constellation &S, const Eigen::MatrixXcd &F, int L);

    struct WorstCase
    {
        Channel H;
        QuadMaxResult solve;
    };

    // argmax of ||scale H X_eff - S||^2 over the ball of the given radius around H_center.
    WorstCase worst_case_channel(const Waveform &X_eff, const Constellation &S, const Channel &H_center, double scale,
                                 double radius, NormKind norm, const QuadMaxOptions &opts = {});

    DesignResult method1_sensing_centric(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S,
                                         const Covariance &R, double theta, const RobustOptions &opts = {});

    DesignResult method2_sensing_centric(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S,
                                         const Covariance &R, double theta, const RobustOptions &opts = {});

    // constraint must be Method::m3_tpc or Method::m3_papc.
    DesignResult method3_joint(const SystemConfig &cfg, const Channel &H_bar, const Constellation &S,
                               const Waveform &X_s, double rho, double theta, Method constraint,
                               const RobustOptions &opts = {});

    double gap_diagnostic(const Channel &H_worst, const Waveform &X_bar, const Waveform &X_robust,
                          const Constellation &S);
}

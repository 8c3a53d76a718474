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

#include "isac/types.hpp"

#include <cstdint>
#include <vector>

namespace isac
{
    // Lower Cholesky factor F with F F^H = R. Throws SolverError unless R is Hermitian positive definite.
    Eigen::MatrixXcd factorize_R(const Covariance &R);

    // H^H (H H^H)^{-1} S, with a pseudo-inverse fallback (and a logged warning) when H H^H is singular.
    Waveform zero_forcing(const Channel &H, const Constellation &S);

    // U I_{NxL} V^H from the full SVD of F^H H^H S; the optimal waveform is sqrt(L) F times this.
    Eigen::MatrixXcd sensing_centric_factor(const Channel &H, const Constellation &S, const Eigen::MatrixXcd &F);

    // Minimizer of ||H X - S||_F^2 subject to X X^H = L R, where F F^H = R.
    Waveform sensing_centric_optimal(const Channel &H, const Constellation &S, const Eigen::MatrixXcd &F, int L);

    // sqrt(L) F I_{NxL}.
    Waveform canonical_sensing_waveform(const Covariance &R, int L);

    // sqrt(L) F Q with Q a seeded random N x L matrix with orthonormal rows.
    Waveform synth_sensing_waveform(const Covariance &R, int L, std::uint64_t seed);

    // Trace-normalized mixture of steering outer products and the identity.
    Covariance synth_covariance(const std::vector<double> &target_azimuths_deg, double beam_weight, int N,
                                double power_watts);

    // rho ||H X - S||_F^2 + (1 - rho) ||X - X_s||_F^2
    double joint_objective(const Channel &H, const Constellation &S, const Waveform &X_s, double rho,
                           const Waveform &X);

    // Exact minimizer of the joint objective on the sphere ||X||_F^2 = L P_T.
    Waveform joint_tpc(const Channel &H, const Constellation &S, const Waveform &X_s, double rho, double power_watts,
                       int L);

    struct PapcOptions
    {
        int max_iter = 500;
        double tol = 1e-10;       // relative objective stall
        double step_tol = 1e-12;  // relative change of X per sweep
        const Waveform *init = nullptr;
    };

    struct PapcResult
    {
        Waveform X;
        bool converged = false;
        int iterations = 0;
        std::vector<double> objective; // per sweep, starting with the initial point
    };

    // Joint objective under equal per-antenna power L P_T / N, solved by exact row-wise block-coordinate descent.
    PapcResult joint_papc(const Channel &H, const Constellation &S, const Waveform &X_s, double rho,
                          double power_watts, const PapcOptions &opts = {});

    // Rescale every row to squared norm L P_T / N.
    Waveform project_rows(const Waveform &X, double power_watts);
}

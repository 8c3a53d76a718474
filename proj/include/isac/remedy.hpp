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

#include <vector>

namespace isac
{
    // U Sigma V^H with U N x N, V L x L unitary and Sigma N x L real non-negative diagonal.
    struct SvdTriple
    {
        Eigen::MatrixXcd U;
        Eigen::VectorXd sigma; // min(N, L) diagonal entries
        Eigen::MatrixXcd V;

        Eigen::MatrixXcd Sigma() const;    // dense N x L
        Eigen::MatrixXcd product() const;  // U Sigma V^H
        Eigen::MatrixXcd semi_unitary() const; // U I_{NxL} V^H
    };

    // argmin ||U A - B||_F over U with orthonormal rows (U U^H = I); U = U1 V1^H from SVD(B A^H).
    Eigen::MatrixXcd procrustes(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B);

    enum class SigmaStrategy
    {
        clip,           // max(0, Re M_ii) on the diagonal
        singular_values // singular values of M
    };

    Eigen::VectorXd project_sigma(const Eigen::MatrixXcd &M, SigmaStrategy strategy = SigmaStrategy::clip);

    // alpha ||U Sigma V^H - F^H H^H S||^2 + ||U I V^H - A_bar||^2
    double remedy_objective(const SvdTriple &t, const Eigen::MatrixXcd &target, const Eigen::MatrixXcd &A_bar,
                            double alpha);

    struct RemedyOptions
    {
        int max_iter = 200;
        double tol = 1e-10; // on |delta psi|
        SigmaStrategy strategy = SigmaStrategy::clip;
    };

    struct RemedyTrace
    {
        std::vector<double> psi; // starts with the initial value
        bool converged = false;
        int iterations = 0;
    };

    struct RemedyResult
    {
        SvdTriple triple;
        RemedyTrace trace;
        double svd_residual = 0.0; // ||U Sigma V^H - F^H H^H S||_F
    };

    // Alternating U / V / Sigma updates, started from the SVD of F^H H^H S.
    RemedyResult remedy_svd_match(const Channel &H, const Eigen::MatrixXcd &F, const Constellation &S,
                                  const Eigen::MatrixXcd &A_bar, double alpha, const RemedyOptions &opts = {});

    // sqrt(L) F U I_{NxL} V^H
    Waveform remedy_waveform(const Eigen::MatrixXcd &F, const SvdTriple &t);

    // Closed form with stacked channel [sqrt(alpha) H; I_N] and symbols [sqrt(alpha) S; X_bar].
    Waveform remedy_stacked(const Channel &H, const Waveform &X_bar, const Eigen::MatrixXcd &F, const Constellation &S,
                            double alpha, int L);
}

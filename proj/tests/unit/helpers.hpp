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

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace testing
{
    using cd = std::complex<double>;

    inline Eigen::MatrixXcd randn(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &g)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        Eigen::MatrixXcd A(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
                A(i, j) = cd(n(g), n(g));
        return A;
    }

    // Random Hermitian positive definite N x N with trace P.
    inline Eigen::MatrixXcd random_covariance(int N, double P, std::mt19937_64 &g)
    {
        const Eigen::MatrixXcd A = randn(N, N, g);
        Eigen::MatrixXcd R = A * A.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(N, N);
        return R * (P / R.trace().real());
    }

    // Frobenius-norm squared by a plain loop.
    inline double loop_energy(const Eigen::MatrixXcd &A)
    {
        double s = 0.0;
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            for (Eigen::Index j = 0; j < A.cols(); ++j)
                s += std::norm(A(i, j));
        return s;
    }

    // H X - S by explicit triple loop.
    inline Eigen::MatrixXcd loop_residual(const Eigen::MatrixXcd &H, const Eigen::MatrixXcd &X,
                                          const Eigen::MatrixXcd &S)
    {
        Eigen::MatrixXcd R = -S;
        for (Eigen::Index k = 0; k < H.rows(); ++k)
            for (Eigen::Index l = 0; l < X.cols(); ++l)
                for (Eigen::Index n = 0; n < H.cols(); ++n)
                    R(k, l) += H(k, n) * X(n, l);
        return R;
    }
}

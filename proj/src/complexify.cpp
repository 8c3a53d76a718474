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

#include "isac/complexify.hpp"

namespace isac
{
    RealStackedVector stack_vector(const Eigen::VectorXcd &z)
    {
        const Eigen::Index m = z.size();
        RealStackedVector v(2 * m);
        v.head(m) = z.real();
        v.tail(m) = z.imag();
        return v;
    }

    Eigen::VectorXcd unstack_vector(const RealStackedVector &v)
    {
        require(v.size() % 2 == 0, "unstack_vector: odd length " + std::to_string(v.size()));
        const Eigen::Index m = v.size() / 2;
        Eigen::VectorXcd z(m);
        z.real() = v.head(m);
        z.imag() = v.tail(m);
        return z;
    }

    RealStackedMatrix stack_matrix(const Eigen::MatrixXcd &A)
    {
        const Eigen::Index m = A.rows(), n = A.cols();
        RealStackedMatrix M(2 * m, 2 * n);
        M.topLeftCorner(m, n) = A.real();
        M.topRightCorner(m, n) = -A.imag();
        M.bottomLeftCorner(m, n) = A.imag();
        M.bottomRightCorner(m, n) = A.real();
        return M;
    }

    Eigen::VectorXcd vec(const Eigen::MatrixXcd &A)
    {
        return A.reshaped();
    }

    Eigen::MatrixXcd unvec(const Eigen::VectorXcd &v, Eigen::Index rows, Eigen::Index cols)
    {
        require(v.size() == rows * cols, "unvec: length " + std::to_string(v.size()) + " does not match " +
                                             std::to_string(rows) + "x" + std::to_string(cols));
        return v.reshaped(rows, cols);
    }

    RealStackedVector stack_channel(const Channel &H)
    {
        return stack_vector(vec(H));
    }

    Channel unstack_channel(const RealStackedVector &h, Eigen::Index K, Eigen::Index N)
    {
        return unvec(unstack_vector(h), K, N);
    }

    QuadMaxInstance build_quadmax_instance(const Waveform &X_eff, const Constellation &S, const Channel &H_center,
                                           double scale)
    {
        const Eigen::Index K = S.rows(), L = S.cols(), N = X_eff.rows();
        require(X_eff.cols() == L, "build_quadmax_instance: X_eff has " + std::to_string(X_eff.cols()) +
                                       " columns, S has " + std::to_string(L));
        require(H_center.rows() == K && H_center.cols() == N, "build_quadmax_instance: center channel must be " +
                                                                   std::to_string(K) + "x" + std::to_string(N));
        require(scale >= 0.0, "build_quadmax_instance: negative scale");

        // scale * (X_eff^T kron I_K), a KL x KN complex matrix
        Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(K * L, K * N);
        for (Eigen::Index l = 0; l < L; ++l)
            for (Eigen::Index n = 0; n < N; ++n)
            {
                const cd x = scale * X_eff(n, l);
                for (Eigen::Index k = 0; k < K; ++k)
                    G(l * K + k, n * K + k) = x;
            }

        return {stack_matrix(G), stack_channel(S), stack_channel(H_center)};
    }
}

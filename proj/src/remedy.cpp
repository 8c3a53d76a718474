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

#include "isac/remedy.hpp"
#include "isac/nominal.hpp"

#include <cmath>

namespace isac
{
    Eigen::MatrixXcd SvdTriple::Sigma() const
    {
        Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(U.cols(), V.cols());
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            D(i, i) = sigma(i);
        return D;
    }

    Eigen::MatrixXcd SvdTriple::product() const
    {
        const Eigen::Index r = sigma.size();
        return U.leftCols(r) * sigma.asDiagonal() * V.leftCols(r).adjoint();
    }

    Eigen::MatrixXcd SvdTriple::semi_unitary() const
    {
        const Eigen::Index r = std::min(U.cols(), V.cols());
        return U.leftCols(r) * V.leftCols(r).adjoint();
    }

    Eigen::MatrixXcd procrustes(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B)
    {
        require(A.cols() == B.cols(), "procrustes: A and B must have the same number of columns");
        const Eigen::MatrixXcd P = B * A.adjoint();
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(P, Eigen::ComputeThinU | Eigen::ComputeThinV);
        return svd.matrixU() * svd.matrixV().adjoint();
    }

    Eigen::VectorXd project_sigma(const Eigen::MatrixXcd &M, SigmaStrategy strategy)
    {
        const Eigen::Index r = std::min(M.rows(), M.cols());
        if (strategy == SigmaStrategy::singular_values)
            return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues();
        Eigen::VectorXd s(r);
        for (Eigen::Index i = 0; i < r; ++i)
            s(i) = std::max(0.0, M(i, i).real());
        return s;
    }

    double remedy_objective(const SvdTriple &t, const Eigen::MatrixXcd &target, const Eigen::MatrixXcd &A_bar,
                            double alpha)
    {
        return alpha * (t.product() - target).squaredNorm() + (t.semi_unitary() - A_bar).squaredNorm();
    }

    RemedyResult remedy_svd_match(const Channel &H, const Eigen::MatrixXcd &F, const Constellation &S,
                                  const Eigen::MatrixXcd &A_bar, double alpha, const RemedyOptions &opts)
    {
        const Eigen::Index N = F.rows(), L = S.cols();
        require(alpha >= 0.0, "remedy_svd_match: alpha must be >= 0");
        require(H.cols() == N && H.rows() == S.rows(), "remedy_svd_match: channel shape mismatch");
        require(A_bar.rows() == N && A_bar.cols() == L, "remedy_svd_match: A_bar must be N x L");
        require(N <= L, "remedy_svd_match: needs N <= L");

        const Eigen::MatrixXcd T = F.adjoint() * H.adjoint() * S; // N x L
        const double sa = std::sqrt(alpha);

        RemedyResult res;
        SvdTriple &t = res.triple;
        {
            const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
            t.U = svd.matrixU();
            t.V = svd.matrixV();
            t.sigma = svd.singularValues();
        }
        double psi = remedy_objective(t, T, A_bar, alpha);
        res.trace.psi.push_back(psi);

        Eigen::MatrixXcd A1(N, 2 * L), B1(N, 2 * L), A2(L, 2 * N), B2(L, 2 * N);
        B1 << A_bar, sa * T;
        B2 << A_bar.adjoint(), sa * T.adjoint();

        for (int it = 1; it <= opts.max_iter; ++it)
        {
            const SvdTriple previous = t;
            // U step: min ||U [I V^H, sqrt(a) Sigma V^H] - [A_bar, sqrt(a) T]||
            A1 << t.V.leftCols(N).adjoint(), sa * t.Sigma() * t.V.adjoint();
            t.U = procrustes(A1, B1);

            // V step on the conjugate-transposed problem.
            A2.setZero();
            A2.topLeftCorner(N, N) = t.U.adjoint();
            A2.rightCols(N) = sa * t.Sigma().adjoint() * t.U.adjoint();
            t.V = procrustes(A2, B2);

            t.sigma = project_sigma(t.U.adjoint() * T * t.V, opts.strategy);

            const double psi_new = remedy_objective(t, T, A_bar, alpha);
            res.trace.iterations = it;
            if (psi_new > psi)
            {
                // Round-off only: an exact step never increases psi. Keep the best iterate.
                t = previous;
                res.trace.converged = true;
                break;
            }
            res.trace.psi.push_back(psi_new);
            const double delta = std::abs(psi - psi_new);
            psi = psi_new;
            if (delta <= opts.tol)
            {
                res.trace.converged = true;
                break;
            }
        }
        res.svd_residual = (t.product() - T).norm();
        return res;
    }

    Waveform remedy_waveform(const Eigen::MatrixXcd &F, const SvdTriple &t)
    {
        return std::sqrt(static_cast<double>(t.V.rows())) * F * t.semi_unitary();
    }

    Waveform remedy_stacked(const Channel &H, const Waveform &X_bar, const Eigen::MatrixXcd &F, const Constellation &S,
                            double alpha, int L)
    {
        require(alpha >= 0.0, "remedy_stacked: alpha must be >= 0");
        const Eigen::Index K = H.rows(), N = H.cols();
        require(X_bar.rows() == N && X_bar.cols() == L, "remedy_stacked: nominal waveform must be N x L");
        const double sa = std::sqrt(alpha);
        Eigen::MatrixXcd Ht(K + N, N), St(K + N, L);
        Ht << sa * H, Eigen::MatrixXcd::Identity(N, N);
        St << sa * S, X_bar;
        return sensing_centric_optimal(Ht, St, F, L);
    }
}

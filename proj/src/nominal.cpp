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

#include "isac/nominal.hpp"
#include "isac/model.hpp"
#include "isac/random.hpp"

#include <boost/math/tools/roots.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <limits>
#include <sstream>

namespace isac
{
    Eigen::MatrixXcd factorize_R(const Covariance &R)
    {
        require(R.rows() == R.cols() && R.rows() > 0, "factorize_R: covariance must be square and non-empty");
        if ((R - R.adjoint()).norm() > 1e-12 * std::max(1.0, R.norm()))
            throw SolverError("factorize_R: covariance is not Hermitian");
        const Eigen::MatrixXcd Rh = 0.5 * (R + R.adjoint());
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(Rh, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues().minCoeff();
        if (!(lmin > 0.0))
        {
            std::ostringstream msg;
            msg << "factorize_R: covariance is not positive definite (smallest eigenvalue " << lmin << ")";
            throw SolverError(msg.str());
        }
        Eigen::LLT<Eigen::MatrixXcd> llt(Rh);
        if (llt.info() != Eigen::Success)
            throw SolverError("factorize_R: Cholesky factorization failed");
        return llt.matrixL();
    }

    Waveform zero_forcing(const Channel &H, const Constellation &S)
    {
        require(H.rows() == S.rows(), "zero_forcing: channel and constellation user counts differ");
        const Eigen::MatrixXcd G = H * H.adjoint();
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(G, Eigen::EigenvaluesOnly);
        const auto &ev = eig.eigenvalues();
        if (ev.size() == 0 || ev.minCoeff() <= 1e-12 * std::max(ev.maxCoeff(), 1e-300))
        {
            spdlog::warn("zero_forcing: channel is rank deficient, using pseudo-inverse");
            return H.completeOrthogonalDecomposition().pseudoInverse() * S;
        }
        return H.adjoint() * G.llt().solve(S);
    }

    Eigen::MatrixXcd sensing_centric_factor(const Channel &H, const Constellation &S, const Eigen::MatrixXcd &F)
    {
        const Eigen::Index N = F.rows(), L = S.cols();
        require(F.cols() == N && H.cols() == N, "sensing_centric_factor: factor and channel sizes differ");
        require(H.rows() == S.rows(), "sensing_centric_factor: channel and constellation user counts differ");
        require(N <= L, "sensing_centric_factor: needs N <= L");
        const Eigen::MatrixXcd M = F.adjoint() * H.adjoint() * S;
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
        return svd.matrixU() * svd.matrixV().leftCols(N).adjoint();
    }

    Waveform sensing_centric_optimal(const Channel &H, const Constellation &S, const Eigen::MatrixXcd &F, int L)
    {
        require(S.cols() == L, "sensing_centric_optimal: constellation length differs from L");
        return std::sqrt(static_cast<double>(L)) * F * sensing_centric_factor(H, S, F);
    }

    Waveform canonical_sensing_waveform(const Covariance &R, int L)
    {
        const Eigen::MatrixXcd F = factorize_R(R);
        require(F.rows() <= L, "canonical_sensing_waveform: needs N <= L");
        return std::sqrt(static_cast<double>(L)) * F * Eigen::MatrixXcd::Identity(F.rows(), L);
    }

    Waveform synth_sensing_waveform(const Covariance &R, int L, std::uint64_t seed)
    {
        const Eigen::MatrixXcd F = factorize_R(R);
        require(F.rows() <= L, "synth_sensing_waveform: needs N <= L");
        Rng rng(seed);
        return std::sqrt(static_cast<double>(L)) * F * random_semi_unitary(F.rows(), L, rng);
    }

    Covariance synth_covariance(const std::vector<double> &target_azimuths_deg, double beam_weight, int N,
                                double power_watts)
    {
        require(N >= 1, "synth_covariance: N must be positive");
        require(beam_weight >= 0.0 && beam_weight < 1.0, "synth_covariance: beam_weight must lie in [0, 1)");
        require(power_watts > 0.0, "synth_covariance: power must be positive");
        Covariance R = (1.0 - beam_weight) / N * Eigen::MatrixXcd::Identity(N, N);
        for (double phi : target_azimuths_deg)
        {
            const Eigen::VectorXcd a = steering_vector(N, phi);
            R += beam_weight / N * a * a.adjoint();
        }
        R = 0.5 * (R + R.adjoint()).eval();
        return R * (power_watts / R.trace().real());
    }

    double joint_objective(const Channel &H, const Constellation &S, const Waveform &X_s, double rho,
                           const Waveform &X)
    {
        return rho * (H * X - S).squaredNorm() + (1.0 - rho) * (X - X_s).squaredNorm();
    }

    namespace
    {
        void check_joint(const Channel &H, const Constellation &S, const Waveform &X_s, double rho)
        {
            require(rho >= 0.0 && rho <= 1.0, "joint design: rho must lie in [0, 1]");
            require(H.rows() == S.rows(), "joint design: channel and constellation row counts differ");
            require(X_s.rows() == H.cols() && X_s.cols() == S.cols(), "joint design: sensing waveform must be N x L");
        }
    }

    Waveform joint_tpc(const Channel &H, const Constellation &S, const Waveform &X_s, double rho, double power_watts,
                       int L)
    {
        check_joint(H, S, X_s, rho);
        require(S.cols() == L, "joint_tpc: constellation length differs from L");
        require(power_watts > 0.0, "joint_tpc: power must be positive");
        const Eigen::Index N = H.cols();
        const double c = L * power_watts;

        // Stationarity: (A + lambda I) X = B on the sphere ||X||^2 = c.
        Eigen::MatrixXcd A = rho * H.adjoint() * H + (1.0 - rho) * Eigen::MatrixXcd::Identity(N, N);
        A = 0.5 * (A + A.adjoint()).eval();
        const Eigen::MatrixXcd B = rho * H.adjoint() * S + (1.0 - rho) * X_s;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(A);
        const Eigen::VectorXd &lam = eig.eigenvalues();
        const Eigen::MatrixXcd &Q = eig.eigenvectors();
        const Eigen::MatrixXcd Cm = Q.adjoint() * B;
        const Eigen::VectorXd w = Cm.rowwise().squaredNorm();
        const double wsum = w.sum();

        // Shift t = lambda + lambda_min >= 0, d_i = lambda_i - lambda_min.
        const Eigen::VectorXd d = (lam.array() - lam(0)).max(0.0).matrix();
        const double dtol = 1e-12 * std::max(1.0, std::abs(lam(N - 1)));
        std::vector<bool> bottom(N);
        double w_bottom = 0.0;
        for (Eigen::Index i = 0; i < N; ++i)
        {
            bottom[i] = d(i) <= dtol;
            if (bottom[i])
                w_bottom += w(i);
        }
        const bool bottom_empty = w_bottom <= 1e-20 * wsum || wsum == 0.0;

        auto norm2 = [&](double t)
        {
            double s = 0.0;
            for (Eigen::Index i = 0; i < N; ++i)
            {
                if (bottom_empty && bottom[i])
                    continue;
                s += w(i) / ((d(i) + t) * (d(i) + t));
            }
            return s;
        };
        auto assemble = [&](double t)
        {
            Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(N, L);
            for (Eigen::Index i = 0; i < N; ++i)
            {
                if (bottom_empty && bottom[i])
                    continue;
                Y.row(i) = Cm.row(i) / (d(i) + t);
            }
            return Y;
        };

        double n0 = 0.0;
        if (bottom_empty)
        {
            n0 = 0.0;
            for (Eigen::Index i = 0; i < N; ++i)
                if (!bottom[i])
                    n0 += w(i) / (d(i) * d(i));
        }

        Eigen::MatrixXcd Y;
        if (bottom_empty && n0 <= c)
        {
            // Hard case: the bottom eigenspace absorbs the remaining power at no change in objective.
            Y = assemble(0.0);
            Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(N, L);
            const Eigen::MatrixXcd Xs_rot = Q.adjoint() * X_s;
            for (Eigen::Index i = 0; i < N; ++i)
                if (bottom[i])
                    W.row(i) = Xs_rot.row(i);
            if (W.norm() == 0.0)
            {
                for (Eigen::Index i = 0; i < N; ++i)
                    if (bottom[i])
                    {
                        W(i, 0) = 1.0;
                        break;
                    }
            }
            Y += std::sqrt(std::max(0.0, c - n0)) / W.norm() * W;
        }
        else
        {
            const double t_lo = bottom_empty ? 0.0 : std::sqrt(w_bottom / c);
            const double t_hi = std::sqrt(wsum / c);
            auto f = [&](double t) { return std::log(norm2(t)) - std::log(c); };
            double t = t_lo;
            const double f_lo = t_lo > 0.0 ? f(t_lo) : std::log(n0) - std::log(c);
            const double f_hi = f(t_hi);
            // Round-off level residuals count as roots; the bracket collapses when the spectrum is flat.
            const double f_tol = 64.0 * std::numeric_limits<double>::epsilon();
            if (std::abs(f_lo) <= f_tol)
                t = t_lo;
            else if (std::abs(f_hi) <= f_tol)
                t = t_hi;
            else if (f_lo < 0.0 || f_hi > 0.0)
            {
                std::ostringstream msg;
                msg << "joint_tpc: power equation not bracketed on [" << t_lo << ", " << t_hi << "] (residuals " << f_lo
                    << ", " << f_hi << ")";
                throw SolverError(msg.str());
            }
            else
            {
                boost::uintmax_t max_iter = 200;
                const auto [a, b] = boost::math::tools::toms748_solve(
                    f, t_lo, t_hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
                if (max_iter >= 200)
                {
                    std::ostringstream msg;
                    msg << "joint_tpc: root finding did not converge, bracket [" << a << ", " << b << "]";
                    throw SolverError(msg.str());
                }
                t = 0.5 * (a + b);
            }
            Y = assemble(t);
        }

        Waveform X = Q * Y;
        const double nx = X.norm();
        if (!(nx > 0.0) || !std::isfinite(nx))
            throw SolverError("joint_tpc: degenerate solution");
        X *= std::sqrt(c) / nx;
        return X;
    }

    Waveform project_rows(const Waveform &X, double power_watts)
    {
        const double target = std::sqrt(static_cast<double>(X.cols()) * power_watts / static_cast<double>(X.rows()));
        Waveform Y = X;
        for (Eigen::Index n = 0; n < X.rows(); ++n)
        {
            const double r = X.row(n).norm();
            if (r > 0.0)
                Y.row(n) *= target / r;
            else
            {
                Y.row(n).setZero();
                Y(n, 0) = target;
            }
        }
        return Y;
    }

    PapcResult joint_papc(const Channel &H, const Constellation &S, const Waveform &X_s, double rho,
                          double power_watts, const PapcOptions &opts)
    {
        check_joint(H, S, X_s, rho);
        require(power_watts > 0.0, "joint_papc: power must be positive");
        const Eigen::Index N = H.cols(), L = S.cols();
        const double row_norm = std::sqrt(static_cast<double>(L) * power_watts / static_cast<double>(N));

        Waveform X;
        if (opts.init)
        {
            require(opts.init->rows() == N && opts.init->cols() == L, "joint_papc: initial point must be N x L");
            X = project_rows(*opts.init, power_watts);
        }
        else
        {
            // Unconstrained least-squares minimizer, then per-row projection.
            const Eigen::MatrixXcd A =
                rho * H.adjoint() * H + (1.0 - rho) * Eigen::MatrixXcd::Identity(N, N);
            const Eigen::MatrixXcd B = rho * H.adjoint() * S + (1.0 - rho) * X_s;
            X = project_rows(A.completeOrthogonalDecomposition().solve(B), power_watts);
        }

        PapcResult res;
        Eigen::MatrixXcd E = H * X - S;
        double phi = rho * E.squaredNorm() + (1.0 - rho) * (X - X_s).squaredNorm();
        res.objective.push_back(phi);

        for (int it = 1; it <= opts.max_iter; ++it)
        {
            const Waveform X_prev = X;
            for (Eigen::Index n = 0; n < N; ++n)
            {
                const Eigen::VectorXcd h = H.col(n);
                // Residual with row n removed: S - sum_{m != n} h_m x_m = -(E - h x_n).
                const Eigen::RowVectorXcd old = X.row(n);
                const Eigen::MatrixXcd Rn = -(E - h * old);
                const Eigen::RowVectorXcd v = rho * (h.adjoint() * Rn) + (1.0 - rho) * X_s.row(n);
                const double vn = v.norm();
                if (vn == 0.0)
                    continue;
                const Eigen::RowVectorXcd upd = (row_norm / vn) * v;
                E += h * (upd - old);
                X.row(n) = upd;
            }
            E = H * X - S;
            const double phi_new = rho * E.squaredNorm() + (1.0 - rho) * (X - X_s).squaredNorm();
            res.objective.push_back(phi_new);
            res.iterations = it;
            const double step = (X - X_prev).norm();
            const bool stalled = phi - phi_new <= opts.tol * std::max(1.0, std::abs(phi_new));
            phi = phi_new;
            if (stalled && step <= opts.step_tol * std::max(1.0, X.norm()))
            {
                res.converged = true;
                break;
            }
        }
        res.X = X;
        return res;
    }
}

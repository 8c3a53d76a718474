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
#include <optional>
#include <vector>

namespace isac
{
    // Maximize p(h) = ||C h - s||^2 over ||h - h_center|| <= theta.
    struct QuadMaxProblem
    {
        RealStackedMatrix C;
        RealStackedVector s;
        RealStackedVector h_center;
        double theta = 0.0;
        NormKind norm = NormKind::frobenius;
    };

    // Precomputed pieces of p: Q = C^T C = M^T M, g = C^T s.
    class QuadForm
    {
    public:
        QuadForm(const RealStackedMatrix &C, const RealStackedVector &s);

        double value(const RealStackedVector &h) const;        // p(h)
        RealStackedVector half_gradient(const RealStackedVector &h) const; // Q h - g
        RealStackedVector minimizer() const;                   // Q^{-1} g

        const RealStackedMatrix &Q() const { return Q_; }
        const RealStackedVector &g() const { return g_; }

        // M^{-T} v and M^{-1} v
        RealStackedVector solve_Mt(const RealStackedVector &v) const;
        RealStackedVector solve_M(const RealStackedVector &v) const;

        double ss() const { return ss_; }
        double gQg() const { return gQg_; }

    private:
        RealStackedMatrix C_;
        RealStackedVector s_;
        RealStackedMatrix Q_;
        RealStackedVector g_;
        Eigen::LLT<RealStackedMatrix> llt_; // Q = L L^T, M = L^T
        double ss_ = 0.0;
        double gQg_ = 0.0;
    };

    // Maximizer of (Q h_prev - g)^T y over the level set p(y) = p(h_prev). Empty when the direction vanishes.
    std::optional<RealStackedVector> subproblem_y(const QuadForm &p, const RealStackedVector &h_prev);
    std::optional<RealStackedVector> subproblem_y(const RealStackedMatrix &C, const RealStackedVector &s,
                                                  const RealStackedVector &h_prev);

    // Maximizer of (Q y - g)^T h over the ball. Empty when the direction vanishes.
    std::optional<RealStackedVector> subproblem_h(const QuadForm &p, const RealStackedVector &y,
                                                  const RealStackedVector &h_center, double theta, NormKind norm);
    std::optional<RealStackedVector> subproblem_h(const RealStackedMatrix &C, const RealStackedVector &s,
                                                  const RealStackedVector &y, const RealStackedVector &h_center,
                                                  double theta, NormKind norm);

    struct QuadMaxOptions
    {
        int max_iter = 100;
        double tol = 1e-10;
        std::uint64_t seed = 0x5eed;
        // Two-norm only: restart from the dominant eigen-directions when the second-order condition fails.
        bool globalize = true;
    };

    enum class Termination
    {
        optimality_condition,
        iteration_cap
    };

    struct QuadMaxIterate
    {
        RealStackedVector h;
        double objective;
    };

    struct QuadMaxTrace
    {
        std::vector<QuadMaxIterate> iterates; // strictly increasing objective
        Termination terminated_by = Termination::iteration_cap;
        int iterations = 0;
        double certificate = 0.0; // <Q y_k - g, h_k - y_k> at the last step
        int restarts = 0;
        bool global_certified = false; // two-norm second-order condition satisfied
    };

    struct QuadMaxResult
    {
        RealStackedVector h;
        double objective = 0.0;
        QuadMaxTrace trace;
    };

    QuadMaxResult solve_quadmax(const QuadMaxProblem &problem, const QuadMaxOptions &opts = {});
}

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

#include "isac/quadmax.hpp"
#include "isac/random.hpp"

#include <bit>
#include <cmath>

namespace isac
{
    QuadForm::QuadForm(const RealStackedMatrix &C, const RealStackedVector &s) : C_(C), s_(s)
    {
        require(C.rows() == s.size(), "QuadForm: C has " + std::to_string(C.rows()) + " rows, s has " +
                                          std::to_string(s.size()) + " entries");
        Q_ = C.transpose() * C;
        g_ = C.transpose() * s;
        llt_.compute(Q_);
        if (llt_.info() != Eigen::Success)
            throw SolverError("QuadForm: C^T C is not positive definite");
        ss_ = s.squaredNorm();
        gQg_ = solve_Mt(g_).squaredNorm();
    }

    double QuadForm::value(const RealStackedVector &h) const
    {
        return (C_ * h - s_).squaredNorm();
    }

    RealStackedVector QuadForm::half_gradient(const RealStackedVector &h) const
    {
        return Q_ * h - g_;
    }

    RealStackedVector QuadForm::minimizer() const
    {
        return llt_.solve(g_);
    }

    RealStackedVector QuadForm::solve_Mt(const RealStackedVector &v) const
    {
        return llt_.matrixL().solve(v);
    }

    RealStackedVector QuadForm::solve_M(const RealStackedVector &v) const
    {
        return llt_.matrixU().solve(v);
    }

    std::optional<RealStackedVector> subproblem_y(const QuadForm &p, const RealStackedVector &h_prev)
    {
        const RealStackedVector d = p.half_gradient(h_prev);
        const RealStackedVector z = p.solve_Mt(d);
        const double zn = z.norm();
        const double scale = (p.Q() * h_prev).norm() + p.g().norm();
        if (!(zn > 1e-14 * scale))
            return std::nullopt;
        // Radicand is a difference of near-equal terms near convergence; clamp round-off.
        const double gamma = std::sqrt(std::max(0.0, p.value(h_prev) + p.gQg() - p.ss()));
        return p.solve_M(gamma / zn * z + p.solve_Mt(p.g()));
    }

    std::optional<RealStackedVector> subproblem_y(const RealStackedMatrix &C, const RealStackedVector &s,
                                                  const RealStackedVector &h_prev)
    {
        return subproblem_y(QuadForm(C, s), h_prev);
    }

    std::optional<RealStackedVector> subproblem_h(const QuadForm &p, const RealStackedVector &y,
                                                  const RealStackedVector &h_center, double theta, NormKind norm)
    {
        require(y.size() == h_center.size(), "subproblem_h: size mismatch");
        require(theta >= 0.0, "subproblem_h: negative radius");
        if (theta == 0.0)
            return h_center;
        const RealStackedVector d = p.half_gradient(y);
        const double dn = d.norm();
        const double scale = (p.Q() * y).norm() + p.g().norm();
        if (!(dn > 1e-14 * scale))
            return std::nullopt;
        if (norm == NormKind::frobenius)
            return RealStackedVector(h_center + (theta / dn) * d);
        return RealStackedVector(h_center + theta * d.unaryExpr([](double v) { return double((v > 0.0) - (v < 0.0)); }));
    }

    std::optional<RealStackedVector> subproblem_h(const RealStackedMatrix &C, const RealStackedVector &s,
                                                  const RealStackedVector &y, const RealStackedVector &h_center,
                                                  double theta, NormKind norm)
    {
        return subproblem_h(QuadForm(C, s), y, h_center, theta, norm);
    }

    namespace
    {
        // Box problems up to this dimension are finished by exhaustive vertex enumeration.
        constexpr Eigen::Index box_enumeration_limit = 20;
        constexpr int box_restarts = 8;

        struct Ascent
        {
            bool ok = false;
            QuadMaxResult result;
        };

        // One run of the alternating (y, h) iteration from h0.
        Ascent ascend(const QuadForm &p, const QuadMaxProblem &pb, const RealStackedVector &h0, const QuadMaxOptions &o)
        {
            Ascent out;
            QuadMaxTrace &tr = out.result.trace;
            RealStackedVector h_prev = h0;
            double p_prev = p.value(h0);
            tr.iterates.push_back({h0, p_prev});

            for (int k = 1; k <= o.max_iter; ++k)
            {
                const auto y = subproblem_y(p, h_prev);
                if (!y)
                    return out;
                const auto h = subproblem_h(p, *y, pb.h_center, pb.theta, pb.norm);
                if (!h)
                    return out;
                const double cert = p.half_gradient(*y).dot(*h - *y);
                const double p_new = p.value(*h);
                tr.iterations = k;
                tr.certificate = cert;
                if (p_new > p_prev)
                {
                    h_prev = *h;
                    p_prev = p_new;
                    tr.iterates.push_back({h_prev, p_prev});
                }
                if (cert <= o.tol)
                {
                    tr.terminated_by = Termination::optimality_condition;
                    break;
                }
            }
            out.ok = true;
            out.result.h = h_prev;
            out.result.objective = p_prev;
            return out;
        }

        RealStackedVector draw_start(const QuadMaxProblem &pb, Rng &rng)
        {
            const RealStackedVector u = random_unit_vector(pb.h_center.size(), rng);
            if (pb.norm == NormKind::frobenius)
                return pb.h_center + pb.theta * u;
            return pb.h_center + pb.theta * u.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
        }

        RealStackedVector draw_valid_start(const QuadMaxProblem &pb, const RealStackedVector &h_min, Rng &rng)
        {
            for (int attempt = 0; attempt < 16; ++attempt)
            {
                RealStackedVector h0 = draw_start(pb, rng);
                if ((h0 - h_min).norm() > 1e-12 * std::max(1.0, h_min.norm()))
                    return h0;
            }
            throw SolverError("solve_quadmax: every initial point coincides with the unconstrained minimizer");
        }

        // Best single-coordinate moves to a face of the box, applied while they strictly improve p.
        void flip_search(const QuadForm &p, const QuadMaxProblem &pb, QuadMaxResult &r)
        {
            const RealStackedMatrix &Q = p.Q();
            RealStackedVector d = p.half_gradient(r.h);
            for (int sweep = 0; sweep < 100000; ++sweep)
            {
                double best_gain = 0.0, best_delta = 0.0;
                Eigen::Index best_i = -1;
                for (Eigen::Index i = 0; i < r.h.size(); ++i)
                    for (double target : {pb.h_center(i) + pb.theta, pb.h_center(i) - pb.theta})
                    {
                        const double delta = target - r.h(i);
                        const double gain = 2.0 * delta * d(i) + delta * delta * Q(i, i);
                        if (gain > best_gain)
                        {
                            best_gain = gain;
                            best_delta = delta;
                            best_i = i;
                        }
                    }
                if (best_i < 0 || best_gain <= 1e-14 * std::max(1.0, r.objective))
                    return;
                r.h(best_i) += best_delta;
                d += best_delta * Q.col(best_i);
                const double value = p.value(r.h);
                if (!(value > r.objective))
                    return;
                r.objective = value;
                r.trace.iterates.push_back({r.h, value});
            }
        }

        // Exact maximum over all 2^n vertices by Gray-code traversal with O(n) updates.
        RealStackedVector enumerate_vertices(const QuadForm &p, const QuadMaxProblem &pb)
        {
            const Eigen::Index n = pb.h_center.size();
            const RealStackedMatrix &Q = p.Q();
            RealStackedVector h = pb.h_center.array() - pb.theta;
            RealStackedVector d = p.half_gradient(h);
            double value = p.value(h), best = value;
            std::uint64_t state = 0, best_state = 0;
            for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k)
            {
                const int i = std::countr_zero(k);
                const double delta = (state >> i & 1) ? -2.0 * pb.theta : 2.0 * pb.theta;
                value += 2.0 * delta * d(i) + delta * delta * Q(i, i);
                d += delta * Q.col(i);
                state ^= std::uint64_t{1} << i;
                if (value > best)
                {
                    best = value;
                    best_state = state;
                }
            }
            RealStackedVector v(n);
            for (Eigen::Index i = 0; i < n; ++i)
                v(i) = pb.h_center(i) + ((best_state >> i & 1) ? pb.theta : -pb.theta);
            return v;
        }

        // Second-order condition for the two-norm ball: ||Q h - g|| / theta >= lambda_max(Q).
        bool second_order_ok(const QuadForm &p, const QuadMaxProblem &pb, const RealStackedVector &h, double lmax)
        {
            const double nu = p.half_gradient(h).norm() / pb.theta;
            return nu >= lmax * (1.0 - 1e-9);
        }
    }

    QuadMaxResult solve_quadmax(const QuadMaxProblem &pb, const QuadMaxOptions &o)
    {
        const Eigen::Index n = pb.h_center.size();
        require(pb.C.cols() == n, "solve_quadmax: C has " + std::to_string(pb.C.cols()) + " columns, center has " +
                                      std::to_string(n) + " entries");
        require(pb.theta >= 0.0 && std::isfinite(pb.theta), "solve_quadmax: radius must be finite and >= 0");

        const QuadForm p(pb.C, pb.s);
        if (pb.theta == 0.0)
        {
            QuadMaxResult r;
            r.h = pb.h_center;
            r.objective = p.value(r.h);
            r.trace.iterates.push_back({r.h, r.objective});
            r.trace.terminated_by = Termination::optimality_condition;
            r.trace.global_certified = true;
            return r;
        }

        Rng rng(o.seed);
        const RealStackedVector h_min = p.minimizer();

        auto run = [&](RealStackedVector h0)
        {
            Ascent a = ascend(p, pb, h0, o);
            if (!a.ok)
            {
                // Perturb and retry once.
                a = ascend(p, pb, draw_valid_start(pb, h_min, rng), o);
                if (!a.ok)
                    throw SolverError("solve_quadmax: degenerate ascent direction after re-initialization");
            }
            return a.result;
        };

        QuadMaxResult best = run(draw_valid_start(pb, h_min, rng));
        if (pb.norm == NormKind::entry_infinity)
        {
            if (!o.globalize)
                return best;
            // Alternate the ascent with face moves until neither improves.
            auto polish = [&](QuadMaxResult r)
            {
                for (int round = 0; round < 1000; ++round)
                {
                    const double before = r.objective;
                    flip_search(p, pb, r);
                    if (!(r.objective > before))
                        break;
                    const QuadMaxResult next = run(r.h);
                    r.trace.iterations += next.trace.iterations;
                    r.trace.certificate = next.trace.certificate;
                    r.trace.terminated_by = next.trace.terminated_by;
                    if (!(next.objective > r.objective))
                        break;
                    for (std::size_t i = 1; i < next.trace.iterates.size(); ++i)
                        r.trace.iterates.push_back(next.trace.iterates[i]);
                    r.h = next.h;
                    r.objective = next.objective;
                }
                return r;
            };
            best = polish(std::move(best));
            if (n <= box_enumeration_limit)
            {
                const RealStackedVector v = enumerate_vertices(p, pb);
                const double pv = p.value(v);
                if (pv > best.objective)
                {
                    best.h = v;
                    best.objective = pv;
                    best.trace.iterates.push_back({v, pv});
                    const RealStackedVector d = p.half_gradient(v);
                    best.trace.certificate = d.dot(*subproblem_h(p, v, pb.h_center, pb.theta, pb.norm) - v);
                }
                best.trace.global_certified = true;
                return best;
            }
            for (int start = 0; start < box_restarts; ++start)
            {
                QuadMaxResult cand = polish(run(draw_valid_start(pb, h_min, rng)));
                if (cand.objective > best.objective)
                {
                    cand.trace.restarts = best.trace.restarts;
                    best = std::move(cand);
                }
                ++best.trace.restarts;
            }
            return best;
        }

        const Eigen::SelfAdjointEigenSolver<RealStackedMatrix> eig(p.Q());
        const double lmax = eig.eigenvalues()(n - 1);
        best.trace.global_certified = second_order_ok(p, pb, best.h, lmax);
        if (!o.globalize || best.trace.global_certified)
            return best;

        // A non-global stationary point lies near one end of the dominant axis; try both ends.
        int restarts = 0;
        for (int j = static_cast<int>(n) - 1; j >= 0 && !best.trace.global_certified; --j)
        {
            if (eig.eigenvalues()(j) < lmax * (1.0 - 1e-9))
                break;
            for (double sign : {1.0, -1.0})
            {
                const RealStackedVector h0 = pb.h_center + sign * pb.theta * eig.eigenvectors().col(j);
                if ((h0 - h_min).norm() <= 1e-12 * std::max(1.0, h_min.norm()))
                    continue;
                QuadMaxResult cand = run(h0);
                ++restarts;
                cand.trace.global_certified = second_order_ok(p, pb, cand.h, lmax);
                if (cand.objective > best.objective)
                    best = std::move(cand);
            }
        }
        best.trace.restarts = restarts;
        return best;
    }
}

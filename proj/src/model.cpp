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

#include "isac/model.hpp"
#include "isac/random.hpp"

#include <cmath>
#include <numbers>

namespace isac
{
    std::string to_string(NormKind kind)
    {
        return kind == NormKind::frobenius ? "frobenius" : "entry_infinity";
    }

    NormKind norm_kind_from_string(const std::string &name)
    {
        if (name == "frobenius" || name == "two" || name == "2")
            return NormKind::frobenius;
        if (name == "entry_infinity" || name == "infinity" || name == "inf")
            return NormKind::entry_infinity;
        throw DimensionError("unknown norm kind '" + name + "'");
    }

    void SystemConfig::validate() const
    {
        require(users >= 1, "system.users must be >= 1");
        require(antennas >= users, "system.antennas must be >= system.users");
        require(frame_length >= antennas, "system.frame_length must be >= system.antennas");
        require(std::isfinite(power_watts) && power_watts > 0.0, "system.power_watts must be > 0");
        require(std::isfinite(noise_watts) && noise_watts > 0.0, "system.noise_watts must be > 0");
    }

    double dbm_to_watts(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    double watts_to_dbm(double watts)
    {
        return 10.0 * std::log10(watts) + 30.0;
    }

    Constellation qpsk_constellation(int K, int L, std::uint64_t seed, double symbol_power)
    {
        require(K >= 1 && L >= 1, "qpsk_constellation: empty shape");
        require(symbol_power >= 0.0, "qpsk_constellation: negative symbol power");
        Rng rng(seed);
        std::uniform_int_distribution<int> bit(0, 1);
        const double a = std::sqrt(symbol_power / 2.0);
        Constellation S(K, L);
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < K; ++k)
            {
                const double re = bit(rng) ? a : -a;
                const double im = bit(rng) ? a : -a;
                S(k, l) = cd(re, im);
            }
        return S;
    }

    namespace
    {
        void check_shapes(const Channel &H, const Waveform &X, const Constellation &S)
        {
            require(H.cols() == X.rows(), "channel has " + std::to_string(H.cols()) + " columns, waveform has " +
                                              std::to_string(X.rows()) + " rows");
            require(H.rows() == S.rows() && X.cols() == S.cols(),
                    "constellation shape " + std::to_string(S.rows()) + "x" + std::to_string(S.cols()) +
                        " does not match H X");
        }
    }

    double mui_energy(const Channel &H, const Waveform &X, const Constellation &S)
    {
        check_shapes(H, X, S);
        return (H * X - S).squaredNorm();
    }

    double sinr_per_user(const Channel &H, const Waveform &X, const Constellation &S, double noise_watts, int k)
    {
        check_shapes(H, X, S);
        require(k >= 0 && k < H.rows(), "sinr_per_user: user index out of range");
        const double L = static_cast<double>(S.cols());
        const double signal = S.row(k).squaredNorm() / L;
        const double mui = (H.row(k) * X - S.row(k)).squaredNorm() / L;
        return signal / (mui + noise_watts);
    }

    double aasr(const Channel &H, const Waveform &X, const Constellation &S, double noise_watts)
    {
        check_shapes(H, X, S);
        const double L = static_cast<double>(S.cols());
        const Eigen::MatrixXcd E = H * X - S;
        double sum = 0.0;
        for (Eigen::Index k = 0; k < H.rows(); ++k)
        {
            const double gamma = (S.row(k).squaredNorm() / L) / (E.row(k).squaredNorm() / L + noise_watts);
            sum += std::log2(1.0 + gamma);
        }
        return sum / static_cast<double>(H.rows());
    }

    Eigen::VectorXcd steering_vector(int N, double azimuth_deg)
    {
        const double phase = std::numbers::pi * std::sin(azimuth_deg * std::numbers::pi / 180.0);
        Eigen::VectorXcd a(N);
        for (int n = 0; n < N; ++n)
            a(n) = std::polar(1.0, phase * n);
        return a;
    }

    std::vector<double> beampattern(const Covariance &R, const std::vector<double> &azimuths_deg)
    {
        require(R.rows() == R.cols(), "beampattern: covariance must be square");
        std::vector<double> gain;
        gain.reserve(azimuths_deg.size());
        for (double phi : azimuths_deg)
        {
            const Eigen::VectorXcd a = steering_vector(static_cast<int>(R.rows()), phi);
            gain.push_back(std::max(0.0, (a.adjoint() * R * a)(0).real()));
        }
        return gain;
    }

    PowerCheck check_power(const Waveform &X, const PowerConstraint &constraint, double tol)
    {
        const double L = static_cast<double>(X.cols());
        const double N = static_cast<double>(X.rows());
        return std::visit(
            [&](const auto &c) -> PowerCheck
            {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, TotalPower>)
                {
                    const double r = std::abs(X.squaredNorm() / L - c.power_watts);
                    return {r <= tol, r, "TPC"};
                }
                else if constexpr (std::is_same_v<T, PerAntennaPower>)
                {
                    const double target = L * c.power_watts / N;
                    const double r = (X.rowwise().squaredNorm().array() - target).abs().maxCoeff();
                    return {r <= tol, r, "PAPC"};
                }
                else
                {
                    require(c.R.rows() == X.rows() && c.R.cols() == X.rows(),
                            "check_power: covariance must be N x N with N = waveform rows");
                    const Eigen::MatrixXcd LR = L * c.R;
                    const double r = (X * X.adjoint() - LR).norm() / LR.norm();
                    return {r <= tol, r, "COVARIANCE"};
                }
            },
            constraint);
    }

    double channel_norm(const Channel &D, NormKind kind)
    {
        if (kind == NormKind::frobenius)
            return D.norm();
        if (D.size() == 0)
            return 0.0;
        return std::max(D.real().cwiseAbs().maxCoeff(), D.imag().cwiseAbs().maxCoeff());
    }

    bool membership(const UncertaintySet &U, const Channel &H, double rel_tol)
    {
        require(H.rows() == U.center.rows() && H.cols() == U.center.cols(), "membership: channel shape mismatch");
        const double r = U.effective_radius();
        return channel_norm(H - U.center, U.norm) <= r * (1.0 + rel_tol);
    }
}

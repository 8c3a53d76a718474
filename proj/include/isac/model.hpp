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
#include <string>
#include <variant>
#include <vector>

namespace isac
{
    struct SystemConfig
    {
        int users = 4;           // K
        int antennas = 16;       // N
        int frame_length = 30;   // L
        double power_watts = 2.5;
        double noise_watts = 0.25;
        double carrier_hz = 0.0; // informational only

        // Throws DimensionError naming the offending field.
        void validate() const;
    };

    double dbm_to_watts(double dbm);
    double watts_to_dbm(double watts);

    // QPSK symbols (+-1 +-j)/sqrt(2) scaled to the given per-entry power.
    Constellation qpsk_constellation(int K, int L, std::uint64_t seed, double symbol_power = 1.0);

    // ||H X - S||_F^2
    double mui_energy(const Channel &H, const Waveform &X, const Constellation &S);

    // SINR of user k (zero-based).
    double sinr_per_user(const Channel &H, const Waveform &X, const Constellation &S, double noise_watts, int k);

    // Average achievable sum-rate in bps/Hz/user.
    double aasr(const Channel &H, const Waveform &X, const Constellation &S, double noise_watts);

    // Half-wavelength ULA steering vector, azimuth in degrees.
    Eigen::VectorXcd steering_vector(int N, double azimuth_deg);

    // a(phi)^H R a(phi) for every azimuth.
    std::vector<double> beampattern(const Covariance &R, const std::vector<double> &azimuths_deg);

    struct TotalPower
    {
        double power_watts;
    };
    struct PerAntennaPower
    {
        double power_watts;
    };
    struct CovarianceMatch
    {
        Covariance R;
    };
    using PowerConstraint = std::variant<TotalPower, PerAntennaPower, CovarianceMatch>;

    struct PowerCheck
    {
        bool ok;
        double residual; // absolute for TPC/PAPC, relative for COVARIANCE
        std::string mode;
    };

    PowerCheck check_power(const Waveform &X, const PowerConstraint &constraint, double tol);

    struct UncertaintySet
    {
        Channel center;
        double radius = 0.0;
        double budget = 1.0;
        NormKind norm = NormKind::frobenius;

        double effective_radius() const { return budget * radius; }
    };

    // Frobenius norm or largest absolute real/imaginary component.
    double channel_norm(const Channel &D, NormKind kind);

    // ||H - center|| <= budget * radius, with rel_tol absorbing round-off on the boundary.
    bool membership(const UncertaintySet &U, const Channel &H, double rel_tol = 1e-12);
}

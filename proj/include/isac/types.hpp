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
#include <stdexcept>
#include <string>

namespace isac
{
    using cd = std::complex<double>;

    using Channel = Eigen::MatrixXcd;       // K x N, one row per user
    using Waveform = Eigen::MatrixXcd;      // N x L
    using Constellation = Eigen::MatrixXcd; // K x L
    using Covariance = Eigen::MatrixXcd;    // N x N Hermitian

    // Real stacked forms: top half real parts, bottom half imaginary parts.
    using RealStackedVector = Eigen::VectorXd;
    using RealStackedMatrix = Eigen::MatrixXd;

    enum class NormKind
    {
        frobenius,
        entry_infinity
    };

    // Input with wrong shape or out-of-range parameter.
    class DimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Numerical routine could not produce a result.
    class SolverError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline void require(bool ok, const std::string &msg)
    {
        if (!ok)
            throw DimensionError(msg);
    }

    std::string to_string(NormKind kind);
    NormKind norm_kind_from_string(const std::string &name);
}

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

#include "isac/random.hpp"

#include <cmath>

namespace isac
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }
    }

    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index)
    {
        return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
    }

    Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng &rng)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        Eigen::MatrixXcd G(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                G(i, j) = cd(re, im);
            }
        return G;
    }

    Eigen::MatrixXcd random_semi_unitary(Eigen::Index rows, Eigen::Index cols, Rng &rng)
    {
        require(rows <= cols, "random_semi_unitary: rows must not exceed cols");
        const Eigen::MatrixXcd G = complex_gaussian(cols, rows, rng);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
        Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(cols, rows);
        // Fix the phase of each column so the distribution is Haar.
        const Eigen::MatrixXcd Rm = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
        for (Eigen::Index j = 0; j < rows; ++j)
        {
            const cd d = Rm(j, j);
            if (std::abs(d) > 0.0)
                Q.col(j) *= d / std::abs(d);
        }
        return Q.adjoint();
    }

    Eigen::MatrixXcd random_unitary(Eigen::Index n, Rng &rng)
    {
        return random_semi_unitary(n, n, rng);
    }

    Eigen::VectorXd random_unit_vector(Eigen::Index n, Rng &rng)
    {
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd u(n);
        double norm = 0.0;
        while (norm == 0.0)
        {
            for (Eigen::Index i = 0; i < n; ++i)
                u(i) = normal(rng);
            norm = u.norm();
        }
        return u / norm;
    }
}

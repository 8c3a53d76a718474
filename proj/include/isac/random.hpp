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
#include <random>

namespace isac
{
    using Rng = std::mt19937_64;

    // splitmix64 finalizer applied to (master, stream, index); stable across platforms.
    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

    // Entries with real and imaginary parts each N(0, 1/2).
    Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng &rng);

    // rows <= cols; Q Q^H = I_rows.
    Eigen::MatrixXcd random_semi_unitary(Eigen::Index rows, Eigen::Index cols, Rng &rng);

    Eigen::MatrixXcd random_unitary(Eigen::Index n, Rng &rng);

    // Uniformly distributed direction on the real unit sphere.
    Eigen::VectorXd random_unit_vector(Eigen::Index n, Rng &rng);
}

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

namespace isac
{
    // [re(z); im(z)]
    RealStackedVector stack_vector(const Eigen::VectorXcd &z);
    Eigen::VectorXcd unstack_vector(const RealStackedVector &v);

    // [[re, -im], [im, re]], so stack_matrix(A) * stack_vector(z) == stack_vector(A * z)
    RealStackedMatrix stack_matrix(const Eigen::MatrixXcd &A);

    // Column-major vectorization and its inverse.
    Eigen::VectorXcd vec(const Eigen::MatrixXcd &A);
    Eigen::MatrixXcd unvec(const Eigen::VectorXcd &v, Eigen::Index rows, Eigen::Index cols);

    // Stacked real vector of vec(H) and back.
    RealStackedVector stack_channel(const Channel &H);
    Channel unstack_channel(const RealStackedVector &h, Eigen::Index K, Eigen::Index N);

    struct QuadMaxInstance
    {
        RealStackedMatrix C;  // 2KL x 2KN
        RealStackedVector s;  // 2KL
        RealStackedVector h_center; // 2KN
    };

    // Real form of H -> ||scale * H * X_eff - S||_F^2 using vec(HX) = (X^T kron I_K) vec(H).
    QuadMaxInstance build_quadmax_instance(const Waveform &X_eff, const Constellation &S, const Channel &H_center,
                                           double scale);
}

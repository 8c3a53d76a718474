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

#include <iosfwd>
#include <string>

namespace isac
{
    // Text format: first line "rows cols", then one line per row of "re:im" entries at 17 significant digits.
    void write_matrix(std::ostream &os, const Eigen::MatrixXcd &A);
    Eigen::MatrixXcd read_matrix(std::istream &is);

    void write_matrix(const std::string &path, const Eigen::MatrixXcd &A);
    Eigen::MatrixXcd read_matrix(const std::string &path);
}

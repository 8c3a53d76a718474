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

#include "isac/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace isac
{
    namespace
    {
        std::string format_entry(cd z)
        {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g:%.17g", z.real(), z.imag());
            return buf;
        }

        double parse_double(std::string_view s, const std::string &token)
        {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size())
                throw DimensionError("read_matrix: malformed entry '" + token + "'");
            return v;
        }
    }

    void write_matrix(std::ostream &os, const Eigen::MatrixXcd &A)
    {
        os << A.rows() << ' ' << A.cols() << '\n';
        for (Eigen::Index i = 0; i < A.rows(); ++i)
        {
            for (Eigen::Index j = 0; j < A.cols(); ++j)
                os << (j ? " " : "") << format_entry(A(i, j));
            os << '\n';
        }
    }

    Eigen::MatrixXcd read_matrix(std::istream &is)
    {
        long rows = -1, cols = -1;
        if (!(is >> rows >> cols) || rows < 0 || cols < 0)
            throw DimensionError("read_matrix: missing or invalid 'rows cols' header");
        Eigen::MatrixXcd A(rows, cols);
        std::string token;
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
            {
                if (!(is >> token))
                    throw DimensionError("read_matrix: expected " + std::to_string(rows * cols) + " entries");
                const auto colon = token.find(':');
                if (colon == std::string::npos)
                    throw DimensionError("read_matrix: entry '" + token + "' is not re:im");
                const std::string_view sv(token);
                A(i, j) = cd(parse_double(sv.substr(0, colon), token), parse_double(sv.substr(colon + 1), token));
            }
        return A;
    }

    void write_matrix(const std::string &path, const Eigen::MatrixXcd &A)
    {
        std::ofstream os(path);
        if (!os)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        write_matrix(os, A);
        if (!os)
            throw std::runtime_error("write failed for '" + path + "'");
    }

    Eigen::MatrixXcd read_matrix(const std::string &path)
    {
        std::ifstream is(path);
        if (!is)
            throw std::runtime_error("cannot open '" + path + "' for reading");
        try
        {
            return read_matrix(is);
        }
        catch (const DimensionError &e)
        {
            throw DimensionError(path + ": " + e.what());
        }
    }
}

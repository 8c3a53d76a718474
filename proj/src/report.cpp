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

#include "isac/simkit.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace isac
{
    namespace
    {
        const char *csv_header = "method,theta,rho,episode,aasr_true,aasr_nominal,aasr_robust,coverage";

        std::string num(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }

        double parse_num(const std::string &s, const std::string &path, std::size_t line)
        {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size())
                throw std::runtime_error(path + ":" + std::to_string(line) + ": malformed number '" + s + "'");
            return v;
        }

        nlohmann::json jnum(double v)
        {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        }

        double from_jnum(const nlohmann::json &j)
        {
            return j.is_null() ? std::nan("") : j.get<double>();
        }

        void write_csv(const MonteCarloReport &r, std::ostream &os)
        {
            os << csv_header << '\n';
            for (const RhoBlock &b : r.blocks)
                for (const ThetaResult &t : b.thetas)
                    for (std::size_t e = 0; e < t.aasr_true.size(); ++e)
                        os << r.method << ',' << num(t.theta) << ',' << num(b.rho) << ',' << e << ','
                           << num(t.aasr_true[e]) << ',' << num(b.nominal_aasr) << ',' << num(t.robust_aasr) << ','
                           << num(t.coverage) << '\n';
        }

        nlohmann::json to_json(const MonteCarloReport &r)
        {
            nlohmann::json j;
            j["method"] = r.method;
            j["episodes"] = r.episodes;
            j["failures"] = r.failures;
            j["blocks"] = nlohmann::json::array();
            for (const RhoBlock &b : r.blocks)
            {
                nlohmann::json jb;
                jb["rho"] = b.rho;
                jb["nominal_aasr"] = jnum(b.nominal_aasr);
                jb["thetas"] = nlohmann::json::array();
                for (const ThetaResult &t : b.thetas)
                {
                    nlohmann::json jt;
                    jt["theta"] = t.theta;
                    jt["robust_aasr"] = jnum(t.robust_aasr);
                    jt["coverage"] = jnum(t.coverage);
                    jt["gap"] = jnum(t.gap);
                    jt["failed"] = t.failed;
                    jt["failure"] = t.failure;
                    if (!t.failed && !t.aasr_true.empty())
                    {
                        const Percentiles p = percentiles(t.aasr_true);
                        jt["summary"] = {{"min", p.min}, {"p5", p.p5}, {"median", p.median}, {"p95", p.p95},
                                         {"max", p.max}};
                    }
                    nlohmann::json arr = nlohmann::json::array();
                    for (double a : t.aasr_true)
                        arr.push_back(jnum(a));
                    jt["aasr_true"] = std::move(arr);
                    jb["thetas"].push_back(std::move(jt));
                }
                j["blocks"].push_back(std::move(jb));
            }
            return j;
        }

        MonteCarloReport from_json(const nlohmann::json &j)
        {
            MonteCarloReport r;
            r.method = j.at("method").get<std::string>();
            r.episodes = j.at("episodes").get<int>();
            r.failures = j.at("failures").get<int>();
            for (const auto &jb : j.at("blocks"))
            {
                RhoBlock b;
                b.rho = jb.at("rho").get<double>();
                b.nominal_aasr = from_jnum(jb.at("nominal_aasr"));
                for (const auto &jt : jb.at("thetas"))
                {
                    ThetaResult t;
                    t.theta = jt.at("theta").get<double>();
                    t.robust_aasr = from_jnum(jt.at("robust_aasr"));
                    t.coverage = from_jnum(jt.at("coverage"));
                    t.gap = from_jnum(jt.at("gap"));
                    t.failed = jt.at("failed").get<bool>();
                    t.failure = jt.at("failure").get<std::string>();
                    for (const auto &a : jt.at("aasr_true"))
                        t.aasr_true.push_back(from_jnum(a));
                    b.thetas.push_back(std::move(t));
                }
                r.blocks.push_back(std::move(b));
            }
            return r;
        }

        MonteCarloReport read_csv(std::istream &is, const std::string &path)
        {
            std::string line;
            if (!std::getline(is, line) || line != csv_header)
                throw std::runtime_error(path + ": missing or unexpected CSV header");
            MonteCarloReport r;
            std::size_t lineno = 1;
            int max_episode = -1;
            while (std::getline(is, line))
            {
                ++lineno;
                if (line.empty())
                    continue;
                std::vector<std::string> f;
                std::stringstream ss(line);
                std::string cell;
                while (std::getline(ss, cell, ','))
                    f.push_back(cell);
                if (f.size() != 8)
                    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 8 columns");
                r.method = f[0];
                const double theta = parse_num(f[1], path, lineno);
                const double rho = parse_num(f[2], path, lineno);
                const int episode = static_cast<int>(parse_num(f[3], path, lineno));
                max_episode = std::max(max_episode, episode);
                if (r.blocks.empty() || r.blocks.back().rho != rho)
                {
                    RhoBlock b;
                    b.rho = rho;
                    b.nominal_aasr = parse_num(f[5], path, lineno);
                    r.blocks.push_back(std::move(b));
                }
                RhoBlock &b = r.blocks.back();
                if (b.thetas.empty() || b.thetas.back().theta != theta || episode == 0)
                {
                    ThetaResult t;
                    t.theta = theta;
                    t.robust_aasr = parse_num(f[6], path, lineno);
                    t.coverage = parse_num(f[7], path, lineno);
                    t.failed = std::isnan(t.robust_aasr);
                    b.thetas.push_back(std::move(t));
                }
                b.thetas.back().aasr_true.push_back(parse_num(f[4], path, lineno));
            }
            r.episodes = max_episode + 1;
            for (const RhoBlock &b : r.blocks)
                for (const ThetaResult &t : b.thetas)
                    r.failures += t.failed ? 1 : 0;
            return r;
        }
    }

    void emit_report(const MonteCarloReport &report, const std::string &path, ReportFormat format)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        if (format == ReportFormat::csv)
            write_csv(report, os);
        else
            os << to_json(report).dump(2) << '\n';
        if (!os)
            throw std::runtime_error("write failed for '" + path + "'");
    }

    MonteCarloReport read_report(const std::string &path, ReportFormat format)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw std::runtime_error("cannot open '" + path + "' for reading");
        if (format == ReportFormat::csv)
            return read_csv(is, path);
        try
        {
            return from_json(nlohmann::json::parse(is));
        }
        catch (const nlohmann::json::exception &e)
        {
            throw std::runtime_error(path + ": " + e.what());
        }
    }
}

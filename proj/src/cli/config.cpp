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

#include "isac/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace isac::cli
{
    namespace
    {
        using nlohmann::json;

        [[noreturn]] void fail(const std::string &field, const std::string &what)
        {
            throw ConfigError(field + ": " + what);
        }

        void reject_unknown(const json &obj, const std::string &section, const std::set<std::string> &known)
        {
            for (const auto &[key, value] : obj.items())
                if (!known.count(key))
                    fail(section.empty() ? key : section + "." + key, "unknown field");
        }

        const json *section(const json &root, const std::string &name, bool required)
        {
            if (!root.contains(name))
            {
                if (required)
                    fail(name, "missing required section");
                return nullptr;
            }
            const json &s = root.at(name);
            if (!s.is_object())
                fail(name, "must be an object");
            return &s;
        }

        std::optional<double> number(const json *s, const std::string &sec, const std::string &key, bool required)
        {
            const std::string field = sec + "." + key;
            if (!s || !s->contains(key))
            {
                if (required)
                    fail(field, "missing required field");
                return std::nullopt;
            }
            const json &v = s->at(key);
            if (!v.is_number())
                fail(field, "must be a number");
            const double d = v.get<double>();
            if (!std::isfinite(d))
                fail(field, "must be finite");
            return d;
        }

        std::optional<int> integer(const json *s, const std::string &sec, const std::string &key, bool required)
        {
            const std::string field = sec + "." + key;
            if (!s || !s->contains(key))
            {
                if (required)
                    fail(field, "missing required field");
                return std::nullopt;
            }
            const json &v = s->at(key);
            if (!v.is_number_integer())
                fail(field, "must be an integer");
            return v.get<int>();
        }

        std::optional<std::string> text(const json *s, const std::string &sec, const std::string &key, bool required)
        {
            const std::string field = sec + "." + key;
            if (!s || !s->contains(key))
            {
                if (required)
                    fail(field, "missing required field");
                return std::nullopt;
            }
            const json &v = s->at(key);
            if (!v.is_string())
                fail(field, "must be a string");
            return v.get<std::string>();
        }

        // Array of numbers or {start, step, stop}.
        std::optional<std::vector<double>> grid(const json *s, const std::string &sec, const std::string &key)
        {
            const std::string field = sec + "." + key;
            if (!s || !s->contains(key))
                return std::nullopt;
            const json &v = s->at(key);
            std::vector<double> g;
            if (v.is_array())
            {
                for (const json &e : v)
                {
                    if (!e.is_number() || !std::isfinite(e.get<double>()))
                        fail(field, "entries must be finite numbers");
                    g.push_back(e.get<double>());
                }
            }
            else if (v.is_object())
            {
                reject_unknown(v, field, {"start", "step", "stop"});
                const double start = *number(&v, field, "start", true);
                const double step = *number(&v, field, "step", true);
                const double stop = *number(&v, field, "stop", true);
                if (step <= 0.0 || stop < start)
                    fail(field, "needs step > 0 and stop >= start");
                g = make_grid(start, step, stop);
            }
            else
                fail(field, "must be an array or {start, step, stop}");
            if (g.empty())
                fail(field, "must not be empty");
            return g;
        }

        void check(bool ok, const std::string &field, const std::string &what)
        {
            if (!ok)
                fail(field, what);
        }
    }

    ReportFormat format_from_string(const std::string &name)
    {
        if (name == "csv")
            return ReportFormat::csv;
        if (name == "json")
            return ReportFormat::json;
        throw ConfigError("io.format: expected csv or json, got '" + name + "'");
    }

    std::string to_string(ReportFormat format)
    {
        return format == ReportFormat::csv ? "csv" : "json";
    }

    ExperimentConfig parse_config(const std::string &json_text)
    {
        json root;
        try
        {
            root = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config: not valid JSON (") + e.what() + ")");
        }
        if (!root.is_object())
            fail("config", "top level must be an object");
        reject_unknown(root, "", {"system", "targets", "uncertainty", "method", "montecarlo", "io"});

        ExperimentConfig c;
        SystemConfig &sys = c.scenario.system;

        const json *s = section(root, "system", true);
        reject_unknown(*s, "system",
                       {"users", "antennas", "frame_length", "power_watts", "power_dbm", "noise_watts",
                        "symbol_power", "carrier_hz"});
        sys.users = *integer(s, "system", "users", true);
        sys.antennas = *integer(s, "system", "antennas", true);
        sys.frame_length = *integer(s, "system", "frame_length", true);
        const auto pw = number(s, "system", "power_watts", false);
        const auto pdbm = number(s, "system", "power_dbm", false);
        if (pw && pdbm)
            fail("system.power_watts", "give either power_watts or power_dbm, not both");
        if (!pw && !pdbm)
            fail("system.power_watts", "missing required field (or system.power_dbm)");
        sys.power_watts = pw ? *pw : dbm_to_watts(*pdbm);
        sys.noise_watts = *number(s, "system", "noise_watts", true);
        c.scenario.symbol_power = number(s, "system", "symbol_power", false).value_or(1.0);
        sys.carrier_hz = number(s, "system", "carrier_hz", false).value_or(0.0);
        check(sys.users >= 1, "system.users", "must be >= 1");
        check(sys.antennas >= sys.users, "system.antennas", "must be >= system.users");
        check(sys.frame_length >= sys.antennas, "system.frame_length", "must be >= system.antennas");
        check(sys.power_watts > 0.0, "system.power_watts", "must be > 0");
        check(sys.noise_watts > 0.0, "system.noise_watts", "must be > 0");
        check(c.scenario.symbol_power > 0.0, "system.symbol_power", "must be > 0");

        if (const json *t = section(root, "targets", false))
        {
            reject_unknown(*t, "targets", {"azimuths_deg", "beam_weight"});
            if (auto az = grid(t, "targets", "azimuths_deg"))
                c.scenario.target_azimuths_deg = *az;
            c.scenario.beam_weight = number(t, "targets", "beam_weight", false).value_or(c.scenario.beam_weight);
        }
        for (double a : c.scenario.target_azimuths_deg)
            check(a >= -90.0 && a <= 90.0, "targets.azimuths_deg", "entries must lie in [-90, 90]");
        check(c.scenario.beam_weight >= 0.0 && c.scenario.beam_weight < 1.0, "targets.beam_weight",
              "must lie in [0, 1)");

        const json *u = section(root, "uncertainty", false);
        if (u)
            reject_unknown(*u, "uncertainty", {"theta", "theta_grid", "budget", "norm", "epsilon"});
        c.theta = number(u, "uncertainty", "theta", false).value_or(0.0);
        c.theta_grid = grid(u, "uncertainty", "theta_grid").value_or(std::vector<double>{c.theta});
        c.robust.budget = number(u, "uncertainty", "budget", false).value_or(1.0);
        if (auto n = text(u, "uncertainty", "norm", false))
        {
            if (*n == "frobenius")
                c.robust.norm = NormKind::frobenius;
            else if (*n == "entry_infinity")
                c.robust.norm = NormKind::entry_infinity;
            else
                fail("uncertainty.norm", "expected frobenius or entry_infinity, got '" + *n + "'");
        }
        c.scenario.epsilon = number(u, "uncertainty", "epsilon", false).value_or(c.scenario.epsilon);
        check(c.theta >= 0.0, "uncertainty.theta", "must be >= 0");
        for (double t : c.theta_grid)
            check(t >= 0.0, "uncertainty.theta_grid", "entries must be >= 0");
        check(c.robust.budget >= 0.0 && c.robust.budget <= 1.0, "uncertainty.budget", "must lie in [0, 1]");
        check(c.scenario.epsilon >= 0.0, "uncertainty.epsilon", "must be >= 0");

        const json *m = section(root, "method", true);
        reject_unknown(*m, "method", {"name", "rho", "rho_grid", "alpha"});
        const std::string name = *text(m, "method", "name", true);
        try
        {
            c.method = method_from_string(name);
        }
        catch (const DimensionError &)
        {
            fail("method.name", "expected M1, M2, M3-TPC or M3-PAPC, got '" + name + "'");
        }
        const auto rho = number(m, "method", "rho", false);
        if (is_joint(c.method) && !rho && !m->contains("rho_grid"))
            fail("method.rho", "missing required field for " + name);
        c.rho = is_joint(c.method) ? rho.value_or(0.0) : 1.0;
        c.rho_grid = grid(m, "method", "rho_grid").value_or(std::vector<double>{c.rho});
        if (!rho && m->contains("rho_grid"))
            c.rho = c.rho_grid.front();
        c.robust.alpha = number(m, "method", "alpha", false).value_or(c.robust.alpha);
        check(c.rho >= 0.0 && c.rho <= 1.0, "method.rho", "must lie in [0, 1]");
        for (double r : c.rho_grid)
            check(r >= 0.0 && r <= 1.0, "method.rho_grid", "entries must lie in [0, 1]");
        check(c.robust.alpha >= 0.0, "method.alpha", "must be >= 0");

        const json *mc = section(root, "montecarlo", false);
        c.has_montecarlo = mc != nullptr;
        if (mc)
            reject_unknown(*mc, "montecarlo", {"episodes", "master_seed", "threads"});
        c.episodes = integer(mc, "montecarlo", "episodes", false).value_or(c.episodes);
        c.threads = integer(mc, "montecarlo", "threads", false).value_or(c.threads);
        if (mc && mc->contains("master_seed"))
        {
            const json &v = mc->at("master_seed");
            if (!v.is_number_unsigned())
                fail("montecarlo.master_seed", "must be a non-negative integer");
            c.scenario.master_seed = v.get<std::uint64_t>();
        }
        check(c.episodes >= 1, "montecarlo.episodes", "must be >= 1");
        check(c.threads >= 1, "montecarlo.threads", "must be >= 1");

        if (const json *io = section(root, "io", false))
        {
            reject_unknown(*io, "io", {"out_dir", "format"});
            c.out_dir = text(io, "io", "out_dir", false).value_or(c.out_dir);
            if (auto f = text(io, "io", "format", false))
                c.format = format_from_string(*f);
        }
        check(!c.out_dir.empty(), "io.out_dir", "must not be empty");
        return c;
    }

    ExperimentConfig load_config(const std::string &path)
    {
        std::ifstream is(path);
        if (!is)
            throw ConfigError("config: cannot read '" + path + "'");
        std::stringstream ss;
        ss << is.rdbuf();
        return parse_config(ss.str());
    }
}

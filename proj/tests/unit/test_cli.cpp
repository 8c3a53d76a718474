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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isac/cli.hpp"
#include "isac/matrix_io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace isac;
using namespace isac::cli;
namespace fs = std::filesystem;

namespace
{
    fs::path scratch(const std::string &name)
    {
        const fs::path p = fs::temp_directory_path() / "isac_test_cli" / name;
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }

    std::string base_config(const std::string &method_section, const std::string &extra = "")
    {
        return R"({
  "system": {"users": 4, "antennas": 16, "frame_length": 30, "power_dbm": 34, "noise_watts": 0.25},
  "targets": {"azimuths_deg": [-45, 45], "beam_weight": 0.8},
  "uncertainty": {"theta": 0.1, "epsilon": 0.05},
  "method": )" + method_section +
               extra + "\n}\n";
    }

    fs::path write_config(const fs::path &dir, const std::string &text)
    {
        const fs::path p = dir / "config.json";
        std::ofstream(p) << text;
        return p;
    }

    // Value printed after a label by cmd_design.
    double printed(const std::string &out, const std::string &label)
    {
        const std::regex re(label + R"(\s+(\S+))");
        std::smatch m;
        REQUIRE(std::regex_search(out, m, re));
        return std::stod(m[1].str());
    }

    struct Run
    {
        int code;
        std::string out, err;
    };

    Run design(const fs::path &config, const fs::path &out_dir)
    {
        std::ostringstream out, err;
        CommandOptions o;
        o.config_path = config.string();
        o.out_dir = out_dir.string();
        const int code = cmd_design(o, out, err);
        return {code, out.str(), err.str()};
    }

    Run verify(const fs::path &dir, const VerifyTolerances &tol = {})
    {
        std::ostringstream out, err;
        const int code = cmd_verify(dir.string(), tol, out, err);
        return {code, out.str(), err.str()};
    }
}

TEST_CASE("missing required field is a config error naming the field")
{
    const fs::path dir = scratch("missing");
    std::string text = base_config(R"({"name": "M1"})");
    text.replace(text.find(R"("noise_watts": 0.25)"), std::string(R"("noise_watts": 0.25)").size(), R"("carrier_hz": 1)");
    const Run r = design(write_config(dir, text), dir / "out");
    CHECK(r.code == exit_config);
    CHECK(r.err.find("system.noise_watts") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out" / "design.json"));
}

TEST_CASE("config validation messages")
{
    CHECK_THROWS_WITH_AS(parse_config(base_config(R"({"name": "M3-TPC"})")), doctest::Contains("method.rho"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(base_config(R"({"name": "M4"})")), doctest::Contains("method.name"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(base_config(R"({"name": "M1", "bogus": 1})")),
                         doctest::Contains("method.bogus"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    const ExperimentConfig c = parse_config(base_config(R"({"name": "M3-PAPC", "rho": 0.3})"));
    CHECK(c.method == Method::m3_papc);
    CHECK(c.rho == 0.3);
    CHECK(c.scenario.system.power_watts == doctest::Approx(2.5119).epsilon(1e-4));
}

TEST_CASE("zero radius design prints equal costs")
{
    const fs::path dir = scratch("zero");
    std::string text = base_config(R"({"name": "M1"})");
    text.replace(text.find(R"("theta": 0.1)"), 12, R"("theta": 0.0)");
    const Run r = design(write_config(dir, text), dir / "out");
    REQUIRE(r.code == exit_ok);
    CHECK(printed(r.out, "cost_robust") == doctest::Approx(printed(r.out, "cost_nominal")).epsilon(1e-10));
}

TEST_CASE("design then verify passes for every method")
{
    for (const char *m : {R"({"name": "M1"})", R"({"name": "M2"})", R"({"name": "M3-TPC", "rho": 0.25})",
                          R"({"name": "M3-PAPC", "rho": 0.25})"})
    {
        CAPTURE(m);
        const fs::path dir = scratch("verify");
        const Run d = design(write_config(dir, base_config(m)), dir / "out");
        REQUIRE(d.code == exit_ok);
        for (const char *f : {"H_bar.txt", "S.txt", "R.txt", "X_s.txt", "X_nominal.txt", "X_robust.txt",
                              "H_worst.txt", "design.json"})
            CHECK(fs::exists(dir / "out" / f));
        const Run v = verify(dir / "out");
        CHECK(v.code == exit_ok);
        CHECK(v.out.find("verify: all checks passed") != std::string::npos);
    }
}

TEST_CASE("corrupted waveform is reported as a covariance violation")
{
    const fs::path dir = scratch("corrupt");
    REQUIRE(design(write_config(dir, base_config(R"({"name": "M1"})")), dir / "out").code == exit_ok);
    const fs::path xr = dir / "out" / "X_robust.txt";
    write_matrix(xr.string(), 1.01 * read_matrix(xr.string()));
    const Run v = verify(dir / "out");
    CHECK(v.code == exit_invariant);
    CHECK(v.out.find("COVARIANCE") != std::string::npos);

    // A loose enough tolerance accepts the same artifact.
    VerifyTolerances loose;
    loose.feasibility = 0.05;
    loose.cost = 1.0;
    loose.bound = 1.0;
    CHECK(verify(dir / "out", loose).out.find("COVARIANCE") == std::string::npos);
}

TEST_CASE("missing artifact directory is a config error")
{
    CHECK(verify(fs::temp_directory_path() / "isac_test_cli" / "does_not_exist").code == exit_config);
}

TEST_CASE("montecarlo over the standard radius grid")
{
    const fs::path dir = scratch("mc");
    const std::string text = base_config(R"({"name": "M1"})", R"(,
  "montecarlo": {"episodes": 20, "master_seed": 3})");
    std::string grid = text;
    grid.replace(grid.find(R"("theta": 0.1)"), 12, R"("theta_grid": {"start": 0, "step": 0.01, "stop": 0.2})");
    std::ostringstream out, err;
    CommandOptions o;
    o.config_path = write_config(dir, grid).string();
    o.out_dir = (dir / "out").string();
    o.format = ReportFormat::json;
    REQUIRE(cmd_montecarlo(o, out, err) == exit_ok);
    const MonteCarloReport rep = read_report((dir / "out" / "report.json").string(), ReportFormat::json);
    REQUIRE(rep.blocks.size() == 1);
    CHECK(rep.blocks[0].thetas.size() == 21);
    CHECK(rep.episodes == 20);
    std::size_t lines = 0;
    for (char c : out.str())
        lines += c == '\n';
    CHECK(lines == 22);
}

TEST_CASE("montecarlo without its section is a config error")
{
    const fs::path dir = scratch("nomc");
    std::ostringstream out, err;
    CommandOptions o;
    o.config_path = write_config(dir, base_config(R"({"name": "M1"})")).string();
    CHECK(cmd_montecarlo(o, out, err) == exit_config);
    CHECK(err.str().find("montecarlo") != std::string::npos);
}

TEST_CASE("single episode smoke run")
{
    const fs::path dir = scratch("smoke");
    std::ostringstream out, err;
    CommandOptions o;
    o.config_path =
        write_config(dir, base_config(R"({"name": "M3-TPC", "rho": 0.25})", R"(,
  "montecarlo": {"episodes": 1})"))
            .string();
    o.out_dir = (dir / "out").string();
    o.seed = 9;
    const auto t0 = std::chrono::steady_clock::now();
    CHECK(cmd_montecarlo(o, out, err) == exit_ok);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
    CHECK(fs::exists(dir / "out" / "report.csv"));
}

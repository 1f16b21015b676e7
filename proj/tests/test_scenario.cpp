// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The mimo-lab Authors
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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "mimo_lab/scenario.hpp"

using namespace mimo_lab;
using Catch::Approx;

TEST_CASE("power-law parameters", "[scenario]")
{
    CHECK(PowerLawParam{0.1, 1.0, true}.evaluate(100) == 10.0);
    CHECK(PowerLawParam{0.1, 1.0, true}.evaluate(109) == 10.0);
    CHECK(PowerLawParam{1.0, -0.5, false}.evaluate(100) == Approx(0.1));
    CHECK(PowerLawParam{1.0, 0.5, true}.evaluate(100) == 10.0);
    CHECK(PowerLawParam{1.0, 0.5, true}.evaluate(99) == 9.0);
    CHECK(PowerLawParam{10.0, -1.0}.evaluate(400) == Approx(0.025));
    CHECK_THROWS_AS((PowerLawParam{0.1, 1.0, true}.evaluate(9)), ConfigError);
    CHECK_THROWS_AS((PowerLawParam{1.0, 0.0}.evaluate(0)), ConfigError);
}

TEST_CASE("contamination schedules", "[scenario]")
{
    ContaminationSchedule s;
    s.per_M = {{100, 5}, {200, 4}};
    CHECK(s.at(200) == 4);
    CHECK_THROWS_AS(s.at(300), ConfigError);
    CHECK_FALSE(s.perfect());
    CHECK(ContaminationSchedule{}.perfect());
    CHECK(ContaminationSchedule{3, {}}.at(12345) == 3);
}

TEST_CASE("Table I presets", "[scenario][reference]")
{
    const auto cases = preset_cases("table1");
    REQUIRE(cases.size() == 11);
    struct Row
    {
        double E_t, rho;
        int K;
    };
    for (int M : default_grid())
    {
        const double sq = std::sqrt(static_cast<double>(M));
        const int fsq = static_cast<int>(std::floor(sq));
        const Row rows[] = {
            {10, 10, M / 10}, {10, 1.0 / M, 10}, {10, 1 / sq, fsq},      {10, 1 / sq, 10},
            {10, 10, fsq},    {10, 10, 10},      {10.0 / M, 10, 10},     {1 / sq, 1 / sq, 10},
            {1 / sq, 10, fsq}, {1 / sq, 10, 10}, {10, 20 / sq, 10},
        };
        for (int n = 0; n < 11; ++n)
        {
            INFO("case " << n + 1 << " M=" << M);
            const auto cfg = cases[n].config_at(M);
            CHECK(cfg.E_t == Approx(rows[n].E_t));
            CHECK(cfg.rho == Approx(rows[n].rho));
            CHECK(cfg.K == rows[n].K);
            CHECK(cfg.L_p == 0);
            CHECK(cfg.L == 7);
            CHECK(cfg.c == 0.6);
            CHECK(cfg.alpha == 0.3);
        }
    }
}

TEST_CASE("Table II presets", "[scenario][reference]")
{
    const auto cases = preset_cases("table2", Precoder::zf);
    REQUIRE(cases.size() == 5);
    const int decreasing[] = {5, 5, 4, 4, 3, 3};
    for (std::size_t i = 0; i < default_grid().size(); ++i)
    {
        const int M = default_grid()[i];
        const double sq = std::sqrt(static_cast<double>(M));
        INFO("M=" << M);
        auto c1 = cases[0].config_at(M);
        CHECK(c1.E_t == Approx(0.2));
        CHECK(c1.rho == Approx(1 / sq));
        CHECK(c1.K == static_cast<int>(std::floor(sq)));
        CHECK(c1.L_p == decreasing[i]);
        auto c2 = cases[1].config_at(M);
        CHECK(c2.rho == Approx(0.1));
        CHECK(c2.K == M / 10);
        CHECK(c2.L_p == decreasing[i]);
        auto c3 = cases[2].config_at(M);
        CHECK(c3.rho == Approx(10));
        CHECK(c3.K == 2);
        auto c4 = cases[3].config_at(M);
        CHECK(c4.E_t == Approx(1));
        CHECK(c4.rho == Approx(20));
        CHECK(c4.K == 2);
        CHECK(c4.L_p == 5);
        auto c5 = cases[4].config_at(M);
        CHECK(c5.K == 10);
        CHECK(c5.L_p == 5);
        for (const auto &c : cases)
            CHECK(c.precoder == Precoder::zf);
    }
    CHECK_THROWS_AS(preset_cases("table3"), ConfigError);
}

TEST_CASE("case lookup", "[scenario]")
{
    const auto cases = preset_cases("table1");
    CHECK(find_case(cases, "4").case_id == "table1-case4");
    CHECK(find_case(cases, "case11").case_id == "table1-case11");
    CHECK(find_case(cases, "table1-case1").case_id == "table1-case1");
    CHECK_THROWS_AS(find_case(cases, "12"), ConfigError);
}

TEST_CASE("scenario round trip", "[scenario]")
{
    Scenario sc;
    sc.grid = {100, 200, 300, 400, 500, 600};
    sc.cases = preset_cases("table1");
    for (auto &c : preset_cases("table2", Precoder::zf))
        sc.cases.push_back(c);
    sc.cases[3].c = 0.37;
    sc.cases[3].alpha = 0.123456789;

    const auto text = emit_scenario(sc);
    const auto back = parse_scenario(text);
    CHECK(back.grid == sc.grid);
    REQUIRE(back.cases.size() == sc.cases.size());
    for (std::size_t i = 0; i < sc.cases.size(); ++i)
        CHECK(back.cases[i] == sc.cases[i]);
    CHECK(emit_scenario(back) == text);
}

TEST_CASE("scenario parsing", "[scenario]")
{
    const auto sc = parse_scenario(R"(# comment
grid = 64, 128

[case mine]   # trailing comment
precoder = zf
K = 4 0
rho = 1 -0.5
L_p = 64:2 128:1
)");
    REQUIRE(sc.cases.size() == 1);
    const auto &c = sc.cases[0];
    CHECK(c.precoder == Precoder::zf);
    CHECK(c.E_t == PowerLawParam{1.0, 0.0, false});
    CHECK(c.config_at(128).L_p == 1);
    CHECK(c.config_at(64).rho == Approx(0.125));
    CHECK(c.exponents().r_rho == Approx(0.5));

    auto line_of = [](const std::string &text) {
        try
        {
            parse_scenario(text);
        }
        catch (const ParseError &e)
        {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("grid = 1, x") == 1);
    CHECK(line_of("grid = 200, 100") == 1);
    CHECK(line_of("K = 3 0") == 1);
    CHECK(line_of("[case a]\nK = 3\n") == 2);
    CHECK(line_of("[case a]\n\nK = 3 0 ceil\n") == 3);
    CHECK(line_of("[case a]\nK = 3 0\nK = 4 0\n") == 3);
    CHECK(line_of("[case a]\nbogus = 1\n") == 2);
    CHECK(line_of("[case a\n") == 1);
    CHECK(line_of("[case a]\nL_p = 200:1 100:2\n") == 2);
    CHECK(line_of("[case a]\nprecoder = mmse\n") == 2);
    CHECK(line_of("[case a]\nrho = -1 0\n") == 2);

    // Points that violate the network invariants name M.
    try
    {
        parse_scenario("grid = 100, 200\n[case big]\nK = 0.7 1 floor\nprecoder = mrt\n");
        FAIL("expected a configuration error");
    }
    catch (const ConfigError &e)
    {
        CHECK(std::string(e.what()).find("M = 100") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario("grid = 100, 200\n[case t]\nL_p = 100:1\n"), ConfigError);
}

TEST_CASE("contamination decay exponent", "[scenario][reference]")
{
    ScenarioCase c;
    c.case_id = "zero";
    c.L_p.per_M = {{100, 0}, {200, 1}, {300, 1}};
    CHECK_THROWS_AS(c.exponents(), ConfigError);
    c.L_p.per_M = {{100, 8}, {200, 4}, {400, 2}};
    CHECK(c.exponents().r_gamma == Approx(1.0));
}

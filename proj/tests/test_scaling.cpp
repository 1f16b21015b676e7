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
#include <limits>
#include <vector>

#include "mimo_lab/mrt.hpp"
#include "mimo_lab/scaling.hpp"
#include "mimo_lab/scenario.hpp"
#include "mimo_lab/zf.hpp"

using namespace mimo_lab;
using Catch::Approx;

namespace
{
ScalingExponents exps(double r_t, double r_k, double r_rho, bool perfect = true, double r_gamma = 0)
{
    ScalingExponents s;
    s.r_t = r_t;
    s.r_k = r_k;
    s.r_rho = r_rho;
    s.perfect_pce = perfect;
    s.r_gamma = r_gamma;
    return s;
}

const ScenarioCase &table1(int n, Precoder p = Precoder::mrt)
{
    static const auto mrt = preset_cases("table1", Precoder::mrt);
    static const auto zf = preset_cases("table1", Precoder::zf);
    return (p == Precoder::mrt ? mrt : zf).at(n - 1);
}
} // namespace

TEST_CASE("scaling exponent", "[scaling]")
{
    // Table I Case 3, Case 6, Table II Case 3.
    CHECK(scaling_exponent(exps(0, 0.5, 0.5)) == Approx(0.0).margin(1e-12));
    CHECK(scaling_exponent(exps(0, 0, 0)) == Approx(1.0));
    CHECK(scaling_exponent(exps(0, 0, 0, false, 0.35)) == Approx(0.35));
    CHECK(scaling_exponent(exps(0, 0, 0, false, 0.0)) == Approx(0.0).margin(1e-12));
    CHECK(scaling_exponent(exps(0, 1, 0.5, false, 0.0)) == Approx(-0.5));
}

TEST_CASE("Table I theoretical exponents", "[scaling][reference]")
{
    const double expected[] = {0, 0, 0, 0.5, 0.5, 1, 0, 0, 0, 0.5, 0.5};
    const bool de[] = {true, true, true, true, false, false, true, true, true, true, true};
    for (int n = 1; n <= 11; ++n)
    {
        INFO("case " << n);
        const auto s = table1(n).exponents();
        CHECK(scaling_exponent(s) == Approx(expected[n - 1]).margin(1e-12));
        CHECK(deterministic_check(s) == de[n - 1]);
        CHECK(non_decreasing_check(s));
    }
}

TEST_CASE("Table II theoretical exponents", "[scaling][reference]")
{
    const auto cases = preset_cases("table2");
    const double expected[] = {0, 0, 0.35, 0, 0};
    for (int n = 1; n <= 5; ++n)
    {
        INFO("case " << n);
        const auto s = cases[n - 1].exponents();
        CHECK_FALSE(s.perfect_pce);
        CHECK(deterministic_check(s));
        // r_gamma of [5,5,4,4,3,3] is accepted within 0.1 of the quoted 0.35.
        CHECK(scaling_exponent(s) == Approx(expected[n - 1]).margin(0.1));
    }
    CHECK(cases[2].exponents().r_gamma == Approx(0.311).margin(0.005));
}

TEST_CASE("non-decreasing and deterministic checks", "[scaling]")
{
    CHECK(non_decreasing_check(exps(0.5, 0.5, 0)));
    CHECK_FALSE(non_decreasing_check(exps(1, 0, 0.1)));
    CHECK(non_decreasing_check(exps(0, 0, 0)));

    CHECK(deterministic_check(exps(0, 0, 0.5)));
    CHECK_FALSE(deterministic_check(exps(0, 0, 0)));
    CHECK(deterministic_check(exps(0, 0, 0, false, 0)));
}

TEST_CASE("exponent validation", "[scaling]")
{
    CHECK_THROWS_AS(exps(-0.1, 0, 0).validate(), ConfigError);
    CHECK_THROWS_AS(exps(0, 1.2, 0).validate(), ConfigError);
    CHECK_THROWS_AS(exps(0, 0, 0, false, 1.5).validate(), ConfigError);
    CHECK_NOTHROW(exps(0, 0, 0, true, 7.0).validate());
}

TEST_CASE("MRT applicability", "[scaling][reference]")
{
    SECTION("Case 4 margins lie in [9.4, 16.2]")
    {
        const auto &sc = table1(4);
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        for (int M = 200; M <= 600; M += 100)
        {
            const auto v = mrt_applicability(sc.config_at(M), sc.exponents());
            CHECK(v.regime == "perfect-pce");
            lo = std::min(lo, v.margin);
            hi = std::max(hi, v.margin);
        }
        CHECK(lo == Approx(9.4).epsilon(0.05));
        CHECK(hi == Approx(16.2).epsilon(0.05));
        CHECK(mrt_applicability(sc.config_at(600), sc.exponents()).applicable);
    }
    SECTION("Case 11 margins lie in [0.47, 0.81]")
    {
        const auto &sc = table1(11);
        for (int M = 200; M <= 600; M += 100)
        {
            const auto v = mrt_applicability(sc.config_at(M), sc.exponents());
            CHECK_FALSE(v.applicable);
            CHECK(v.margin > 0.47 * 0.95);
            CHECK(v.margin < 0.81 * 1.05);
        }
    }
    SECTION("vanishing SNR")
    {
        NetworkConfig cfg;
        cfg.M = 200;
        double last = 0;
        for (double rho : {1e-2, 1e-4, 1e-8})
        {
            cfg.rho = rho;
            const auto v = mrt_applicability(cfg, exps(0, 0, 1));
            CHECK(v.applicable);
            CHECK(v.margin > last);
            last = v.margin;
        }
        CHECK(last > 1e6);
    }
    SECTION("contamination branch exposes chi")
    {
        NetworkConfig cfg;
        cfg.M = 400;
        cfg.L_p = 3;
        const auto v = mrt_applicability(cfg, exps(0, 0, 0, false, 0));
        CHECK(v.regime == "contamination-limited");
        REQUIRE_FALSE(v.diagnostics.empty());
        CHECK(v.diagnostics[0].first == "chi");
        const double Q = csi_quality(cfg).Q;
        CHECK(v.diagnostics[0].second == Approx(10.0 / Q * (1 + 0.3 * 3) - 1));
        CHECK(v.margin > 0);
        CHECK(v.applicable == (v.margin >= 10.0));
    }
}

TEST_CASE("ZF applicability", "[scaling][reference]")
{
    SECTION("Case 11: ZF relaxes the MRT power condition")
    {
        // Margins run from about 7.5 (M = 200) to 13 (M = 600); the strict 10x
        // test passes from M = 400 on.
        const auto &sc = table1(11, Precoder::zf);
        for (int M = 200; M <= 600; M += 100)
        {
            const auto cfg = sc.config_at(M);
            const auto zf = zf_applicability(cfg, sc.exponents());
            const auto mrt = mrt_applicability(cfg, sc.exponents());
            CHECK(zf.margin > 7.0);
            CHECK(zf.margin > 10.0 * mrt.margin);
            CHECK(zf.applicable == (M >= 400));
        }
    }
    SECTION("users linear in M only needs the power condition")
    {
        NetworkConfig cfg;
        cfg.M = 300;
        cfg.K = 30;
        cfg.rho = 0.01;
        const auto v = zf_applicability(cfg, exps(0, 1, 0));
        CHECK(v.regime == "perfect-pce, users linear in M");
        const double Q = csi_quality(cfg).Q;
        CHECK(v.margin == Approx(100.0 / ((1 - Q) / 0.6)));
    }
    SECTION("K = Delta/2 fails the degrees-of-freedom clause")
    {
        NetworkConfig cfg;
        cfg.M = 40;
        cfg.K = 12;  // Delta = 24
        cfg.rho = 1e-3;
        const auto v = zf_applicability(cfg, exps(0, 0, 1));
        CHECK_FALSE(v.applicable);
        CHECK(v.margin == Approx(2.0));
    }
    SECTION("Delta <= K is a configuration error")
    {
        NetworkConfig cfg;
        cfg.M = 20;
        cfg.K = 12;
        CHECK_THROWS_AS(zf_applicability(cfg, exps(0, 0, 0)), ConfigError);
    }
    SECTION("threshold is configurable")
    {
        const auto &sc = table1(4);
        const auto v = mrt_applicability(sc.config_at(200), sc.exponents(), 5.0);
        CHECK(v.threshold == 5.0);
        CHECK(v.applicable);
    }
}

TEST_CASE("exponent fitting", "[scaling]")
{
    std::vector<Point> pts;
    for (double M : {100.0, 200.0, 300.0, 450.0, 600.0})
        pts.push_back({M, 3.7 * M});
    CHECK(estimate_exponent(pts) == Approx(1.0).margin(1e-9));

    for (auto &p : pts)
        p.value = 2.5;
    CHECK(estimate_exponent(pts) == Approx(0.0).margin(1e-12));

    for (auto &p : pts)
        p.value = 4.0 / p.M;
    const auto fit = fit_power_decay(pts);
    CHECK(fit.a == Approx(4.0));
    CHECK(fit.b == Approx(1.0));

    SECTION("errors")
    {
        std::vector<Point> two(pts.begin(), pts.begin() + 2);
        CHECK_THROWS_AS(estimate_exponent(two), DomainError);
        auto bad = pts;
        bad[2].value = 0.0;
        CHECK_THROWS_AS(estimate_exponent(bad), DomainError);
        bad = pts;
        bad[2].value = -1.0;
        CHECK_THROWS_AS(fit_power_decay(bad), DomainError);
        bad = pts;
        std::swap(bad[1], bad[2]);
        CHECK_THROWS_AS(estimate_exponent(bad), DomainError);
    }
}

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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mimo_lab/estimation.hpp"
#include "mimo_lab/mrt.hpp"
#include "mimo_lab/scaling.hpp"
#include "mimo_lab/scenario.hpp"
#include "mimo_lab/zf.hpp"

using namespace mimo_lab;
using Catch::Approx;

namespace
{
// Random but valid network parameters.
NetworkConfig random_cfg(std::mt19937_64 &gen)
{
    std::uniform_int_distribution<int> M_dist(8, 160);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NetworkConfig cfg;
    cfg.M = M_dist(gen);
    cfg.c = 0.1 + 0.9 * u(gen);
    cfg.alpha = 0.05 + 0.9 * u(gen);
    cfg.L = 2 + static_cast<int>(6 * u(gen));
    cfg.L_p = static_cast<int>(cfg.L * u(gen)) % cfg.L;
    cfg.K = 1 + static_cast<int>((cfg.delta() - 1) * u(gen));
    cfg.E_t = std::pow(10.0, -2.0 + 4.0 * u(gen));
    cfg.rho = std::pow(10.0, -2.0 + 4.0 * u(gen));
    return cfg;
}

ScalingExponents random_exps(std::mt19937_64 &gen)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScalingExponents s;
    s.r_t = u(gen);
    s.r_k = u(gen);
    s.r_rho = u(gen);
    s.r_gamma = u(gen);
    s.perfect_pce = u(gen) < 0.5;
    return s;
}
} // namespace

TEST_CASE("property: direction bases are orthonormal", "[property]")
{
    std::mt19937_64 gen(1);
    for (int rep = 0; rep < 20; ++rep)
    {
        const auto cfg = random_cfg(gen);
        const auto basis = build_direction_basis<double>(cfg.M, cfg.c);
        const CMatrix<double> gram = basis.A.adjoint() * basis.A;
        CHECK((gram - CMatrix<double>::Identity(basis.Delta, basis.Delta)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(basis.Delta == cfg.delta());
    }
}

TEST_CASE("property: estimates of contaminating links are collinear", "[property]")
{
    std::mt19937_64 gen(2);
    for (int rep = 0; rep < 20; ++rep)
    {
        const auto cfg = random_cfg(gen);
        const auto basis = build_direction_basis<double>(cfg.M, cfg.c);
        RngStream rng(SeedPath{2, "collinear", cfg.M, static_cast<std::uint64_t>(rep)});
        CVector<double> y(cfg.M);
        fill_complex_normal(rng, y);
        const auto own = mmse_filter(y, basis, cfg, pathloss_beta(Link::own, cfg));
        const auto cross = mmse_filter(y, basis, cfg, pathloss_beta(Link::cross, cfg));
        CHECK((cross - cfg.alpha * own).norm() <= 1e-10 * own.norm());
    }
}

TEST_CASE("property: ZF nulls intra-cell interference", "[property]")
{
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 20; ++rep)
    {
        const auto cfg = random_cfg(gen);
        RngStream rng(SeedPath{3, "nulling", cfg.M, static_cast<std::uint64_t>(rep)});
        const int K = std::max(1, cfg.delta() / 2);
        CMatrix<double> H(cfg.delta(), K);
        fill_complex_normal(rng, H);
        const auto W = zf_precoder(H);
        const CMatrix<double> G = H.adjoint() * W;
        CHECK((G - CMatrix<double>::Identity(K, K)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("property: CSI quality", "[property]")
{
    std::mt19937_64 gen(4);
    for (int rep = 0; rep < 200; ++rep)
    {
        auto cfg = random_cfg(gen);
        const double Q = csi_quality(cfg).Q;
        CHECK(Q > 0.0);
        CHECK(Q < 1.0);
        auto more = cfg;
        more.E_t *= 2;
        CHECK(csi_quality(more).Q > Q);
        if (cfg.L_p + 1 < cfg.L)
        {
            auto worse = cfg;
            ++worse.L_p;
            CHECK(csi_quality(worse).Q < Q);
        }
    }
}

TEST_CASE("property: closed-form SINRs stay under the contamination ceiling", "[property]")
{
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 200; ++rep)
    {
        const auto cfg = random_cfg(gen);
        if (cfg.L_p == 0)
            continue;
        const double ceiling = 1.0 / (cfg.L_p * cfg.alpha * cfg.alpha);
        try
        {
            CHECK(effective_sinr_mrt(cfg) < ceiling);
        }
        catch (const ValidityError &)
        {
        }
        if (cfg.delta() > cfg.K)
            CHECK(zf_sinr(cfg) < ceiling);
    }
}

TEST_CASE("property: scaling calculus", "[property]")
{
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> step(0.0, 0.2);
    for (int rep = 0; rep < 2000; ++rep)
    {
        const auto s = random_exps(gen);
        const double r = scaling_exponent(s);

        // Monotone in each growth exponent.
        for (double ScalingExponents::*f : {&ScalingExponents::r_t, &ScalingExponents::r_k,
                                            &ScalingExponents::r_rho})
        {
            auto t = s;
            const double d = step(gen) + 1e-3;
            t.*f += d;
            if (s.perfect_pce)
                CHECK(scaling_exponent(t) == Approx(r - d));
            else
                CHECK(scaling_exponent(t) <= r);
        }

        if (s.perfect_pce)
        {
            CHECK(non_decreasing_check(s) == (r >= -kExponentTolerance));
            if (deterministic_check(s))
                CHECK(r <= 0.5 + kExponentTolerance);
        }
        else
        {
            CHECK(r <= s.r_gamma);
            CHECK(deterministic_check(s));
            auto constant = s;
            constant.r_gamma = 0.0;
            CHECK(scaling_exponent(constant) <= 0.0);
        }
    }
}

TEST_CASE("property: analytic curves follow the scaling law where applicable", "[property][reference]")
{
    const auto grid = default_grid();
    int checked = 0;
    for (const char *table : {"table1", "table2"})
        for (auto precoder : {Precoder::mrt, Precoder::zf})
            for (const auto &sc : preset_cases(table, precoder))
            {
                const auto s = sc.exponents();
                bool applicable = true;
                std::vector<Point> pts;
                for (int M : grid)
                {
                    const auto cfg = sc.config_at(M);
                    const auto v = precoder == Precoder::mrt ? mrt_applicability(cfg, s)
                                                             : zf_applicability(cfg, s);
                    applicable = applicable && v.applicable;
                    pts.push_back({static_cast<double>(M),
                                   precoder == Precoder::mrt ? effective_sinr_mrt(cfg) : zf_sinr(cfg)});
                }
                if (!applicable)
                    continue;
                INFO(sc.case_id << " " << to_string(precoder));
                CHECK(estimate_exponent(pts) == Approx(scaling_exponent(s)).margin(0.05));
                ++checked;
            }
    CHECK(checked > 0);
}

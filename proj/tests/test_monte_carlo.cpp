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
#include <random>
#include <vector>

#include "mimo_lab/monte_carlo.hpp"
#include "mimo_lab/scaling.hpp"

using namespace mimo_lab;
using Catch::Approx;

namespace
{
NetworkConfig make_cfg(int M, int K, int L_p, double E_t = 10.0, double rho = 10.0)
{
    NetworkConfig cfg;
    cfg.M = M;
    cfg.K = K;
    cfg.L_p = L_p;
    cfg.E_t = E_t;
    cfg.rho = rho;
    return cfg;
}

std::vector<double> component(const std::vector<TrialResult> &trials, double SinrBreakdown::*field)
{
    std::vector<double> out;
    for (const auto &t : trials)
        out.push_back(t.components.*field);
    return out;
}
} // namespace

TEST_CASE("trials are reproducible", "[mc]")
{
    const auto cfg = make_cfg(64, 6, 2);
    const SeedPath path{42, "repro", 64, 17};
    for (auto p : {Precoder::mrt, Precoder::zf})
    {
        const auto a = run_trial(cfg, p, path);
        const auto b = run_trial(cfg, p, path);
        CHECK(a.sinr == b.sinr);
        CHECK(a.rate == b.rate);
        CHECK(a.zf_leakage == b.zf_leakage);
        CHECK(a.seed_path == path);
    }
    const auto c = run_trial(cfg, Precoder::mrt, SeedPath{42, "repro", 64, 18});
    CHECK(c.sinr != run_trial(cfg, Precoder::mrt, path).sinr);
}

TEST_CASE("beamspace sample is a coherent set of MMSE estimates", "[mc]")
{
    const auto cfg = make_cfg(48, 4, 2);
    const int m = 1;
    RngStream rng(SeedPath{3, "beamspace", 48, 0});
    const auto sample = sample_cluster<double>(cfg, m, rng);
    const auto basis = build_direction_basis<double>(cfg.M, cfg.c);
    const int D = cfg.delta();
    REQUIRE(sample.cells.size() == 3);
    REQUIRE(sample.cells[0].own.rows() == D);

    const double beta_own = pathloss_beta(Link::own, cfg);
    const double s = cfg.E_t * (beta_own + cfg.L_p * pathloss_beta(Link::cross, cfg));
    const double gain = std::sqrt(cfg.E_t) * beta_own / (1.0 + s);

    SECTION("victim estimates are collinear with the serving estimate")
    {
        CHECK((sample.cells[0].victim - sample.cells[0].own.col(m)).norm() < 1e-12);
        for (int l = 1; l <= cfg.L_p; ++l)
            CHECK((sample.cells[l].victim - cfg.alpha * sample.cells[l].own.col(m)).norm() <
                  1e-12 * sample.cells[l].victim.norm());
    }
    SECTION("full-space MMSE filter reproduces the lifted estimate")
    {
        // Rebuild the observation in antenna space and add a component outside span(A),
        // which the MMSE filter must ignore.
        const CVector<double> y_bs = sample.cells[0].own.col(m) / gain;
        CVector<double> junk(cfg.M);
        fill_complex_normal(rng, junk);
        junk -= basis.A * (basis.A.adjoint() * junk);
        const CVector<double> y = basis.A * y_bs + junk;
        const CVector<double> lifted = basis.A * sample.cells[0].own.col(m);
        for (auto mode : {EstimationMode::projector, EstimationMode::literal})
        {
            const auto h_hat = mmse_filter(y, basis, cfg, beta_own, mode);
            CHECK((h_hat - lifted).norm() < 1e-9 * lifted.norm());
        }
    }
    SECTION("SINR components are invariant under the lift")
    {
        std::vector<CellEstimates<double>> full(sample.cells.size());
        for (std::size_t l = 0; l < full.size(); ++l)
        {
            full[l].own = basis.A * sample.cells[l].own;
            full[l].victim = basis.A * sample.cells[l].victim;
        }
        const auto a = sinr_components<double>(sample.cells, m, cfg);
        const auto b = sinr_components<double>(full, m, cfg);
        CHECK(a.P_s == Approx(b.P_s).epsilon(1e-10));
        CHECK(a.P_i_in == Approx(b.P_i_in).epsilon(1e-10));
        CHECK(a.P_i_out == Approx(b.P_i_out).epsilon(1e-10));
        CHECK(a.sinr == Approx(b.sinr).epsilon(1e-10));
    }
    SECTION("error is orthogonal in distribution: E|e|^2 matches the error covariance")
    {
        double acc = 0;
        const int n = 4000;
        RngStream r(SeedPath{4, "beamspace-err", 48, 0});
        for (int t = 0; t < n; ++t)
            acc += sample_cluster<double>(cfg, m, r).victim_error[0].squaredNorm();
        const double Q = csi_quality(cfg).Q;
        const double expected = D * beta_own * (1.0 - cfg.effective_c() * Q * beta_own);
        // |e|^2 is a scaled chi-square with 2D degrees of freedom.
        const double se = expected / std::sqrt(static_cast<double>(D) * n);
        CHECK(std::abs(acc / n - expected) < 4 * se);
    }
}

TEST_CASE("worker count does not change results", "[mc]")
{
    auto sc = preset_cases("table2").at(1);
    const std::vector<int> grid{100, 200};
    const auto a = run_case_sweep(sc, grid, 150, 9, 1);
    const auto b = run_case_sweep(sc, grid, 150, 9, 8);
    CHECK(a == b);
    sc.precoder = Precoder::zf;
    CHECK(run_case_sweep(sc, grid, 120, 9, 1) == run_case_sweep(sc, grid, 120, 9, 3));

    const auto cfg = make_cfg(64, 4, 1);
    const auto t1 = run_trials(cfg, Precoder::mrt, 5, "w", 257, 1);
    const auto t5 = run_trials(cfg, Precoder::mrt, 5, "w", 257, 5);
    REQUIRE(t1.size() == 257);
    for (std::size_t i = 0; i < t1.size(); ++i)
    {
        CHECK(t1[i].trial_index == i);
        CHECK(t1[i].sinr == t5[i].sinr);
    }
}

TEST_CASE("parallel_for rethrows", "[mc]")
{
    CHECK_THROWS_AS(parallel_for(50, 4,
                                 [](std::size_t i) {
                                     if (i == 31)
                                         throw NumericalError("boom", 1.0);
                                 }),
                    NumericalError);
}

TEST_CASE("SCV estimator", "[mc]")
{
    const std::vector<double> constant(20, 3.5);
    CHECK(estimate_scv(constant) == 0.0);
    CHECK_THROWS_AS(estimate_scv(std::vector<double>{1.0}), DomainError);
    CHECK_THROWS_AS(estimate_scv(std::vector<double>{-1.0, 1.0}), DomainError);

    // Exponential oracle: SCV = 1.
    std::mt19937_64 gen(11);
    std::exponential_distribution<double> expo(0.7);
    double last_err = 1.0;
    for (int n : {1000, 100000})
    {
        std::vector<double> x(n);
        for (auto &v : x)
            v = expo(gen);
        const auto s = summarize(x);
        CHECK(s.scv == Approx(estimate_scv(x)));
        CHECK(std::abs(s.scv - 1.0) < 4 * s.scv_se);
        last_err = std::abs(s.scv - 1.0);
    }
    CHECK(last_err < 0.05);

    const auto c = summarize(constant);
    CHECK(c.mean_se == 0.0);
    CHECK(c.harmonic == Approx(3.5));
    CHECK(c.harmonic_se == 0.0);
}

TEST_CASE("SCV of the desired-signal power", "[mc][reference]")
{
    std::vector<Point> pts;
    for (int M : {64, 128, 256, 512})
    {
        const auto cfg = make_cfg(M, 4, 0);
        const auto trials = run_trials(cfg, Precoder::mrt, 2, "scv-ps", 3000, 0);
        const double scv = estimate_scv(component(trials, &SinrBreakdown::P_s));
        if (M == 128)
            CHECK(scv <= 4.0 / (M * cfg.effective_c()) * 1.5);
        pts.push_back({static_cast<double>(M), scv});
    }
    const auto fit = fit_power_decay(pts);
    CHECK(fit.b > 0.7);
    CHECK(fit.b < 1.3);
}

TEST_CASE("ergodic rate", "[mc]")
{
    const auto cfg = make_cfg(100, 10, 0);
    const auto a = estimate_ergodic_rate(cfg, Precoder::mrt, 1000, 3, "se");
    const auto b = estimate_ergodic_rate(cfg, Precoder::mrt, 2000, 3, "se");
    const double ratio = b.se / a.se;
    CHECK(ratio > (1 / std::sqrt(2.0)) / 1.3);
    CHECK(ratio < (1 / std::sqrt(2.0)) * 1.3);
    CHECK_THROWS_AS(estimate_ergodic_rate(cfg, Precoder::mrt, 99, 3), ConfigError);
}

TEST_CASE("simulated rate respects the lower bound for Table I", "[mc][reference]")
{
    for (const auto &sc : preset_cases("table1"))
    {
        INFO(sc.case_id);
        const auto cfg = sc.config_at(200);
        const auto r = estimate_ergodic_rate(cfg, Precoder::mrt, 600, 1, sc.case_id);
        CHECK(r.rate >= rate_lower_bound(cfg) - 3 * r.se);
    }
}

TEST_CASE("MRT mean SINR near the closed form when applicable", "[mc]")
{
    auto sc = preset_cases("table1").at(3);  // Case 4
    sc.E_t.coefficient = 1e4;
    const auto cfg = sc.config_at(600);
    REQUIRE(mrt_applicability(cfg, sc.exponents()).applicable);
    const auto trials = run_trials(cfg, Precoder::mrt, 1, "large-Et", 2000);
    std::vector<double> sinr;
    for (const auto &t : trials)
        sinr.push_back(t.sinr);
    CHECK(summarize(sinr).mean == Approx(effective_sinr_mrt(cfg)).epsilon(0.05));
}

TEST_CASE("ZF Monte Carlo against the closed form", "[mc][zf]")
{
    for (const auto &cfg : {make_cfg(64, 4, 0), make_cfg(100, 10, 2), make_cfg(200, 10, 5, 1.0, 20.0)})
    {
        INFO("M=" << cfg.M << " K=" << cfg.K << " L_p=" << cfg.L_p);
        const auto trials = run_trials(cfg, Precoder::zf, 5, "zf-cf", 4000);
        std::vector<double> sinr;
        for (const auto &t : trials)
            sinr.push_back(t.sinr);
        const auto s = summarize(sinr);
        CHECK(std::abs(s.harmonic - zf_sinr(cfg)) < 3 * s.harmonic_se);

        const auto mrt = run_trials(cfg, Precoder::mrt, 5, "zf-cf", 4000);
        std::vector<double> mrt_sinr;
        for (const auto &t : mrt)
            mrt_sinr.push_back(t.sinr);
        CHECK(s.scv <= 10 * estimate_scv(mrt_sinr));
    }
}

TEST_CASE("sweeps", "[mc]")
{
    const auto cases = preset_cases("table1");
    CHECK_THROWS_AS(run_case_sweep(cases[5], {100, 200}, 99, 1), ConfigError);
    CHECK_THROWS_AS(run_case_sweep(cases[5], {200, 100}, 100, 1), ConfigError);

    SECTION("invalid points are recorded and the sweep continues")
    {
        auto sc = cases[0];  // K = floor(M/10)
        sc.precoder = Precoder::zf;
        sc.K = PowerLawParam{0.7, 1.0, true};  // K > Delta = 0.6 M
        const auto r = run_case_sweep(sc, {10, 20}, 100, 1);
        REQUIRE(r.rows.size() == 2);
        CHECK_FALSE(r.rows[0].error.empty());
        CHECK_FALSE(r.rows[1].error.empty());

        auto ok = cases[5];
        ok.K = PowerLawParam{1.0, 0.0};
        ok.rho = PowerLawParam{10.0, 0.0};
        const auto r2 = run_case_sweep(ok, {1, 10}, 100, 1);
        CHECK_FALSE(r2.rows[0].error.empty());
        CHECK(r2.rows[1].error.empty());
        CHECK(r2.rows[1].n_trials == 100);
    }
    SECTION("Case 6 effective SINR grows linearly")
    {
        const auto r = run_case_sweep(cases[5], default_grid(), 1000, 1);
        std::vector<Point> pts;
        for (const auto &row : r.rows)
            pts.push_back({static_cast<double>(row.M), row.sinr.harmonic});
        CHECK(estimate_exponent(pts) == Approx(1.0).margin(0.1));
    }
    SECTION("Table II Case 4 stays below the contamination ceiling")
    {
        const auto sc = preset_cases("table2").at(3);
        const auto r = run_case_sweep(sc, default_grid(), 1000, 1);
        double last = 0;
        for (const auto &row : r.rows)
        {
            CHECK(row.sinr.harmonic < 1.0 / (5 * 0.09));
            CHECK(row.effective_sinr_analytic < 1.0 / (5 * 0.09));
            CHECK(row.effective_sinr_analytic > last);
            last = row.effective_sinr_analytic;
        }
    }
}

TEST_CASE("moment verification report", "[mc]")
{
    const auto check = verify_moments(make_cfg(32, 3, 2), 2000, 4);
    CHECK(check.n_trials == 2000);
    bool all_ok = true;
    for (const auto &row : check.rows)
    {
        INFO(row.name);
        CHECK(std::isfinite(row.z));
        CHECK(row.se > 0);
        all_ok = all_ok && std::abs(row.z) <= kMomentZLimit;
    }
    CHECK(check.passed == all_ok);
    CHECK(check.rows.size() >= 18);
    CHECK_THROWS_AS(verify_moments(make_cfg(32, 3, 2), 50, 4), ConfigError);

    // The norm moment at M = 64 is M Q; 60.377 uses c = 0.6 exactly, Delta = 38 shifts Q slightly.
    const auto norm38 = verify_moments(make_cfg(64, 2, 0), 1000, 2);
    REQUIRE(norm38.rows[0].name == "norm");
    CHECK(norm38.rows[0].analytic == Approx(60.377).epsilon(1e-3));
    CHECK(std::abs(norm38.rows[0].z) <= kMomentZLimit);
}

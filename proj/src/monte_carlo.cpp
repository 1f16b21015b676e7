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

#include "mimo_lab/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace mimo_lab
{

TrialResult run_trial(const NetworkConfig &cfg, Precoder precoder, const SeedPath &seed_path)
{
    cfg.validate();
    if (seed_path.M != cfg.M)
        throw DomainError("seed path antenna count does not match the configuration");

    RngStream rng(seed_path);
    const auto cluster = sample_cluster<double>(cfg, kVictimUser, rng);

    TrialResult r;
    r.trial_index = seed_path.trial_index;
    r.seed_path = seed_path;
    if (precoder == Precoder::mrt)
    {
        r.components = sinr_components<double>(cluster.cells, kVictimUser, cfg);
        r.sinr = r.components.sinr;
    }
    else
    {
        double leakage = 0.0;
        for (std::size_t l = 0; l < cluster.cells.size(); ++l)
        {
            const CMatrix<double> W = zf_precoder(cluster.cells[l].own);
            leakage += (W.adjoint() * cluster.victim_error[l]).squaredNorm();
        }
        r.zf_leakage = leakage;
        r.sinr = zf_realized_sinr(leakage, cfg);
    }
    r.rate = rate_from_sinr(r.sinr);
    return r;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)> &body)
{
    if (workers <= 0)
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    if (workers == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n && !failed; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::vector<TrialResult> run_trials(const NetworkConfig &cfg, Precoder precoder,
                                    std::uint64_t master_seed, const std::string &case_id,
                                    long n_trials, int workers)
{
    if (n_trials < 1)
        throw ConfigError("trial count must be positive");
    cfg.validate();
    if (precoder == Precoder::zf)
        zf_lambda(cfg);  // rejects Delta <= K before spawning work
    std::vector<TrialResult> results(static_cast<std::size_t>(n_trials));
    parallel_for(results.size(), workers, [&](std::size_t i) {
        results[i] = run_trial(cfg, precoder, SeedPath{master_seed, case_id, cfg.M, i});
    });
    return results;
}

RateEstimate estimate_ergodic_rate(const NetworkConfig &cfg, Precoder precoder, long n_trials,
                                   std::uint64_t master_seed, const std::string &case_id,
                                   int workers)
{
    if (n_trials < 100)
        throw ConfigError("at least 100 trials are needed for a rate estimate");
    const auto trials = run_trials(cfg, precoder, master_seed, case_id, n_trials, workers);
    std::vector<double> rates;
    rates.reserve(trials.size());
    for (const auto &t : trials)
        rates.push_back(t.rate);
    const auto s = summarize(rates);
    return {s.mean, s.mean_se};
}

double estimate_scv(std::span<const double> samples)
{
    if (samples.size() < 2)
        throw DomainError("SCV needs at least two samples");
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    if (mean == 0.0)
        throw DomainError("SCV is undefined for a zero mean");
    double ss = 0.0;
    for (double x : samples)
        ss += (x - mean) * (x - mean);
    return ss / (n - 1.0) / (mean * mean);
}

SampleSummary summarize(std::span<const double> samples)
{
    SampleSummary out;
    out.n = static_cast<long>(samples.size());
    if (samples.empty())
        throw DomainError("no samples to summarize");
    const double n = static_cast<double>(samples.size());

    // Shift by the first sample so the sums stay well conditioned.
    const double x0 = samples[0];
    double s1 = 0.0, s2 = 0.0;
    for (double x : samples)
    {
        const double d = x - x0;
        s1 += d;
        s2 += d * d;
    }
    out.mean = x0 + s1 / n;
    const double var = samples.size() > 1 ? std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0)) : NAN;
    out.mean_se = std::sqrt(var / n);
    out.scv = out.mean != 0.0 ? var / (out.mean * out.mean) : NAN;

    out.scv_se = NAN;
    if (samples.size() >= 3 && out.mean != 0.0)
    {
        const double m = n - 1.0;
        std::vector<double> loo(samples.size());
        double loo_sum = 0.0;
        for (std::size_t j = 0; j < samples.size(); ++j)
        {
            const double d = samples[j] - x0;
            const double a = s1 - d;
            const double b = s2 - d * d;
            const double mu = x0 + a / m;
            const double v = std::max(0.0, (b - a * a / m) / (m - 1.0));
            loo[j] = v / (mu * mu);
            loo_sum += loo[j];
        }
        const double loo_mean = loo_sum / n;
        double acc = 0.0;
        for (double v : loo)
            acc += (v - loo_mean) * (v - loo_mean);
        out.scv_se = std::sqrt((n - 1.0) / n * acc);
    }

    out.harmonic = NAN;
    out.harmonic_se = NAN;
    if (std::all_of(samples.begin(), samples.end(), [](double x) { return x > 0.0; }))
    {
        double i1 = 0.0, i2 = 0.0;
        const double inv0 = 1.0 / x0;
        for (double x : samples)
        {
            const double d = 1.0 / x - inv0;
            i1 += d;
            i2 += d * d;
        }
        const double inv_mean = inv0 + i1 / n;
        out.harmonic = 1.0 / inv_mean;
        if (samples.size() > 1)
        {
            const double inv_var = std::max(0.0, (i2 - i1 * i1 / n) / (n - 1.0));
            out.harmonic_se = out.harmonic * out.harmonic * std::sqrt(inv_var / n);
        }
    }
    return out;
}

namespace
{
// One sampled statistic of verify_moments.
struct MomentSpec
{
    std::string name;
    double analytic;
    bool leading_order;
    bool scv;  // compare the SCV of the samples rather than their mean
};

double z_score(double empirical, double analytic, double se)
{
    if (se > 0.0)
        return (empirical - analytic) / se;
    return empirical == analytic ? 0.0 : INFINITY;
}
} // namespace

MomentCheck verify_moments(const NetworkConfig &cfg, long n_trials, std::uint64_t master_seed,
                           int workers)
{
    cfg.validate();
    if (n_trials < 100)
        throw ConfigError("moment verification needs at least 100 trials");

    const int D = cfg.delta();
    const int K = cfg.K;
    const double c = cfg.effective_c();
    const double Q = csi_quality(cfg).Q;
    const auto quartic = [&](QuarticCase w) { return gaussian_quartic_moments(D, Q, c, w); };
    const auto lemma = component_moments(cfg);

    std::vector<MomentSpec> specs;
    auto add = [&](const std::string &name, QuarticCase w) {
        specs.push_back({name, quartic(w), w == QuarticCase::fourth_same_repeat, false});
    };
    add("norm", QuarticCase::norm);
    add("norm_product_same", QuarticCase::norm_product_same);
    if (K >= 2)
        add("norm_product_distinct", QuarticCase::norm_product_distinct);
    add("cross_same", QuarticCase::cross_same);
    if (K >= 2)
        add("cross_distinct", QuarticCase::cross_distinct);
    add("fourth_same_all", QuarticCase::fourth_same_all);
    if (K >= 2)
    {
        add("fourth_same_repeat", QuarticCase::fourth_same_repeat);
        add("fourth_same_shared", QuarticCase::fourth_same_shared);
    }
    if (K >= 3)
        add("fourth_same_disjoint", QuarticCase::fourth_same_disjoint);
    add("fourth_other_all", QuarticCase::fourth_other_all);
    if (K >= 2)
    {
        add("fourth_other_disjoint", QuarticCase::fourth_other_disjoint);
        add("fourth_other_shared", QuarticCase::fourth_other_shared);
    }
    specs.push_back({"mean_P_s", lemma.mean_P_s, false, false});
    if (lemma.mean_P_i_in)
        specs.push_back({"mean_P_i_in", *lemma.mean_P_i_in, false, false});
    if (lemma.mean_P_i_out)
        specs.push_back({"mean_P_i_out", *lemma.mean_P_i_out, false, false});
    specs.push_back({"P_e", lemma.P_e, false, false});
    specs.push_back({"scv_P_s", lemma.scv_P_s, false, true});
    if (lemma.scv_P_i_in)
        specs.push_back({"scv_P_i_in", *lemma.scv_P_i_in, false, true});
    if (lemma.scv_P_i_out)
        specs.push_back({"scv_P_i_out", *lemma.scv_P_i_out, false, true});

    const double beta_own = pathloss_beta(Link::own, cfg);
    const double beta_cross = pathloss_beta(Link::cross, cfg);
    const double err_own = beta_own * (1.0 - c * Q * beta_own);
    const double err_cross = beta_cross * (1.0 - c * Q * beta_cross);

    // Each configuration gets its own streams.
    std::ostringstream id;
    id << "verify-moments/K" << cfg.K << "/Lp" << cfg.L_p << "/L" << cfg.L << "/c" << cfg.c << "/a"
       << cfg.alpha << "/Et" << cfg.E_t << "/rho" << cfg.rho;
    const std::string case_id = id.str();

    const std::size_t n = static_cast<std::size_t>(n_trials);
    std::vector<std::vector<double>> values(specs.size(), std::vector<double>(n));
    parallel_for(n, workers, [&](std::size_t t) {
        RngStream rng(SeedPath{master_seed, case_id, cfg.M, t});
        const auto cluster = sample_cluster<double>(cfg, kVictimUser, rng);
        // Estimates of an independent BS for the s != l cases.
        CMatrix<double> other;
        if (cfg.L_p > 0)
            other = cluster.cells[1].own;
        else
            other = sample_cluster<double>(cfg, kVictimUser, rng).cells[0].own;

        const auto &h = cluster.cells[0].own;
        const double nm = h.col(0).squaredNorm();
        const double go = other.col(0).squaredNorm();
        const double x_mk = K >= 2 ? std::norm(h.col(0).dot(h.col(1))) : 0.0;
        const double x_mi = K >= 3 ? std::norm(h.col(0).dot(h.col(2))) : 0.0;
        const double g_mk = K >= 2 ? std::norm(other.col(0).dot(other.col(1))) : 0.0;
        const auto b = sinr_components<double>(cluster.cells, kVictimUser, cfg);

        double pe = 0.0;
        for (std::size_t l = 0; l < cluster.cells.size(); ++l)
            pe += (l == 0 ? err_own : err_cross) * cluster.cells[l].own.squaredNorm();
        pe /= static_cast<double>(K) * (cfg.L_p + 1) * cfg.M;

        std::size_t j = 0;
        for (const auto &spec : specs)
        {
            const std::string &s = spec.name;
            double v = 0.0;
            if (s == "norm")
                v = nm;
            else if (s == "norm_product_same")
                v = nm * nm;
            else if (s == "norm_product_distinct")
                v = nm * h.col(1).squaredNorm();
            else if (s == "cross_same")
                v = go * go;
            else if (s == "cross_distinct")
                v = x_mk;
            else if (s == "fourth_same_all")
                v = nm * nm * nm * nm;
            else if (s == "fourth_same_repeat")
                v = x_mk * x_mk;
            else if (s == "fourth_same_shared")
                v = nm * nm * x_mk;
            else if (s == "fourth_same_disjoint")
                v = x_mk * x_mi;
            else if (s == "fourth_other_all")
                v = nm * nm * go * go;
            else if (s == "fourth_other_disjoint")
                v = x_mk * g_mk;
            else if (s == "fourth_other_shared")
                v = nm * nm * g_mk;
            else if (s == "mean_P_s" || s == "scv_P_s")
                v = b.P_s;
            else if (s == "mean_P_i_in" || s == "scv_P_i_in")
                v = b.P_i_in;
            else if (s == "mean_P_i_out" || s == "scv_P_i_out")
                v = b.P_i_out;
            else if (s == "P_e")
                v = pe;
            values[j++][t] = v;
        }
    });

    MomentCheck out;
    out.cfg = cfg;
    out.n_trials = n_trials;
    out.passed = true;
    for (std::size_t j = 0; j < specs.size(); ++j)
    {
        const auto sum = summarize(values[j]);
        MomentRow row;
        row.name = specs[j].name;
        row.analytic = specs[j].analytic;
        row.leading_order = specs[j].leading_order;
        row.empirical = specs[j].scv ? sum.scv : sum.mean;
        row.se = specs[j].scv ? sum.scv_se : sum.mean_se;
        row.z = z_score(row.empirical, row.analytic, row.se);
        out.passed = out.passed && std::abs(row.z) <= kMomentZLimit;
        out.rows.push_back(std::move(row));
    }
    return out;
}

namespace
{
bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }
} // namespace

bool operator==(const SampleSummary &a, const SampleSummary &b)
{
    return a.n == b.n && same_bits(a.mean, b.mean) && same_bits(a.mean_se, b.mean_se) &&
           same_bits(a.scv, b.scv) && same_bits(a.scv_se, b.scv_se) &&
           same_bits(a.harmonic, b.harmonic) && same_bits(a.harmonic_se, b.harmonic_se);
}

bool SweepResult::operator==(const SweepResult &other) const
{
    if (!(scenario == other.scenario) || rows.size() != other.rows.size())
        return false;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const auto &a = rows[i];
        const auto &b = other.rows[i];
        if (a.M != b.M || a.error != b.error || a.n_trials != b.n_trials || !(a.sinr == b.sinr) ||
            !(a.rate == b.rate) || !same_bits(a.effective_sinr_analytic, b.effective_sinr_analytic) ||
            !same_bits(a.sum_rate_sim, b.sum_rate_sim) ||
            !same_bits(a.sum_rate_sim_se, b.sum_rate_sim_se) ||
            !same_bits(a.sum_rate_bound, b.sum_rate_bound))
            return false;
    }
    return true;
}

SweepResult run_case_sweep(const ScenarioCase &scenario, const std::vector<int> &grid,
                           long n_trials, std::uint64_t master_seed, int workers)
{
    if (n_trials < 100)
        throw ConfigError("a sweep needs at least 100 trials per point");
    if (grid.empty())
        throw ConfigError("empty antenna grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw ConfigError("antenna grid must be strictly increasing");

    SweepResult out;
    out.scenario = scenario;
    for (int M : grid)
    {
        SweepRow row;
        row.M = M;
        try
        {
            row.cfg = scenario.config_at(M);
            const auto trials =
                run_trials(row.cfg, scenario.precoder, master_seed, scenario.case_id, n_trials, workers);
            std::vector<double> sinr, rate;
            sinr.reserve(trials.size());
            rate.reserve(trials.size());
            for (const auto &t : trials)
            {
                sinr.push_back(t.sinr);
                rate.push_back(t.rate);
            }
            row.n_trials = n_trials;
            row.sinr = summarize(sinr);
            row.rate = summarize(rate);
            const double users = static_cast<double>(row.cfg.K) * row.cfg.L;
            row.sum_rate_sim = users * row.rate.mean;
            row.sum_rate_sim_se = users * row.rate.mean_se;
            try
            {
                row.effective_sinr_analytic = scenario.precoder == Precoder::mrt
                                                  ? effective_sinr_mrt(row.cfg)
                                                  : zf_sinr(row.cfg);
                row.sum_rate_bound = users * rate_from_sinr(row.effective_sinr_analytic);
            }
            catch (const ValidityError &)
            {
                // analytic columns stay NaN; the simulation is still meaningful
            }
        }
        catch (const std::exception &e)
        {
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace mimo_lab

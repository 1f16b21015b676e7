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

#ifndef MIMO_LAB_MONTE_CARLO_HPP
#define MIMO_LAB_MONTE_CARLO_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mimo_lab/mrt.hpp"
#include "mimo_lab/scenario.hpp"
#include "mimo_lab/zf.hpp"

namespace mimo_lab
{

/*!
 * One draw of the estimates relevant to the victim user (user m of cell 0)
 * in a cluster of L_p + 1 mutually contaminating cells, in Delta-dimensional
 * beamspace coordinates A^H h.
 *
 * Every inner product of the full M-dimensional vectors equals the inner
 * product of their beamspace coordinates, and A^H n ~ CN(0, I_Delta) for
 * white training noise, so nothing is lost by never leaving span(A).
 *
 * Only the sufficient statistics are drawn: for each BS l and user k the
 * training observation y_lk ~ CN(0, (1 + s) I). When k = m the victim's
 * component is drawn first so its true channel (and hence its estimation
 * error) is available. Stream order: for l, for k: [victim part], remainder.
 */
template <typename T = double>
struct ClusterSample
{
    std::vector<CellEstimates<T>> cells;   // cells[l].own: Delta x K, cells[l].victim
    std::vector<CVector<T>> victim_error;  // h_l0m - h_hat_l0m per BS
};

template <typename T = double>
ClusterSample<T> sample_cluster(const NetworkConfig &cfg, int m, RngStream &rng)
{
    const int D = cfg.delta();
    const int n_bs = cfg.L_p + 1;
    const double beta_own = pathloss_beta(Link::own, cfg);
    const double beta_cross = pathloss_beta(Link::cross, cfg);
    const double s = cfg.E_t * (beta_own + cfg.L_p * beta_cross);
    const double sqrt_Et = std::sqrt(cfg.E_t);
    const T gain_own = static_cast<T>(sqrt_Et * beta_own / (1.0 + s));

    ClusterSample<T> out;
    out.cells.resize(n_bs);
    out.victim_error.resize(n_bs);
    CVector<T> w(D);
    for (int l = 0; l < n_bs; ++l)
    {
        auto &cell = out.cells[l];
        cell.own.resize(D, cfg.K);
        const double beta_victim = l == 0 ? beta_own : beta_cross;
        for (int k = 0; k < cfg.K; ++k)
        {
            if (k == m)
            {
                fill_complex_normal(rng, w);
                const CVector<T> h = static_cast<T>(std::sqrt(beta_victim)) * w;
                const double rest = 1.0 + s - cfg.E_t * beta_victim;
                fill_complex_normal(rng, w);
                const CVector<T> y = static_cast<T>(sqrt_Et) * h + static_cast<T>(std::sqrt(rest)) * w;
                cell.own.col(k) = gain_own * y;
                cell.victim = static_cast<T>(sqrt_Et * beta_victim / (1.0 + s)) * y;
                out.victim_error[l] = h - cell.victim;
            }
            else
            {
                fill_complex_normal(rng, w);
                cell.own.col(k) = (gain_own * static_cast<T>(std::sqrt(1.0 + s))) * w;
            }
        }
    }
    return out;
}

struct TrialResult
{
    double sinr = 0.0;
    double rate = 0.0;
    SinrBreakdown components;  // MRT only
    double zf_leakage = 0.0;   // ZF only: sum_l ||W_ll^H e_l||^2
    std::uint64_t trial_index = 0;
    SeedPath seed_path;
};

// Victim user index used by every trial.
inline constexpr int kVictimUser = 0;

TrialResult run_trial(const NetworkConfig &cfg, Precoder precoder, const SeedPath &seed_path);

// Runs body(i) for i in [0, n) on `workers` threads (0 = hardware concurrency).
// The first exception thrown by any call is rethrown after all threads join.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)> &body);

// Trials 0..n-1 of (master_seed, case_id, cfg.M); the result is independent of `workers`.
std::vector<TrialResult> run_trials(const NetworkConfig &cfg, Precoder precoder,
                                    std::uint64_t master_seed, const std::string &case_id,
                                    long n_trials, int workers = 0);

struct RateEstimate
{
    double rate = 0.0;
    double se = 0.0;
};

// Sample mean of log2(1 + SINR) with its standard error; needs n_trials >= 100.
RateEstimate estimate_ergodic_rate(const NetworkConfig &cfg, Precoder precoder, long n_trials,
                                   std::uint64_t master_seed,
                                   const std::string &case_id = "custom", int workers = 0);

// Unbiased sample variance over squared mean; DomainError for < 2 samples or zero mean.
double estimate_scv(std::span<const double> samples);

struct SampleSummary
{
    long n = 0;
    double mean = 0.0;
    double mean_se = 0.0;
    double scv = 0.0;
    double scv_se = 0.0;       // jackknife
    double harmonic = 0.0;     // 1 / mean(1/x)
    double harmonic_se = 0.0;  // delta method
};

SampleSummary summarize(std::span<const double> samples);

struct MomentRow
{
    std::string name;
    double analytic = 0.0;
    double empirical = 0.0;
    double se = 0.0;
    double z = 0.0;
    bool leading_order = false;  // closed form is only asymptotically exact
};

struct MomentCheck
{
    NetworkConfig cfg;
    long n_trials = 0;
    std::vector<MomentRow> rows;
    bool passed = false;  // |z| <= 3 for every row
};

inline constexpr double kMomentZLimit = 3.0;

/*!
 * Compares the closed-form moments of the MMSE estimates and of the MRT SINR
 * components with Monte Carlo estimates, one victim sample per trial. Rows
 * that need more users or cells than cfg provides are omitted.
 */
MomentCheck verify_moments(const NetworkConfig &cfg, long n_trials, std::uint64_t master_seed,
                           int workers = 0);

struct SweepRow
{
    int M = 0;
    std::string error;  // non-empty when the point is invalid
    NetworkConfig cfg;
    long n_trials = 0;
    SampleSummary sinr;
    SampleSummary rate;
    double effective_sinr_analytic = NAN;  // MRT Jensen bound or ZF closed form
    double sum_rate_sim = NAN;
    double sum_rate_sim_se = NAN;
    double sum_rate_bound = NAN;  // K L log2(1 + effective_sinr_analytic)
};

struct SweepResult
{
    ScenarioCase scenario;
    std::vector<SweepRow> rows;

    bool operator==(const SweepResult &other) const;
};

bool operator==(const SampleSummary &a, const SampleSummary &b);

SweepResult run_case_sweep(const ScenarioCase &scenario, const std::vector<int> &grid,
                           long n_trials, std::uint64_t master_seed, int workers = 0);

} // namespace mimo_lab

#endif

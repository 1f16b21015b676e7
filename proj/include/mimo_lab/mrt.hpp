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

#ifndef MIMO_LAB_MRT_HPP
#define MIMO_LAB_MRT_HPP

#include <cmath>
#include <optional>
#include <span>
#include <string_view>

#include "mimo_lab/estimation.hpp"

namespace mimo_lab
{

/*!
 * Normalized powers of the MRT downlink SINR of one user.
 *
 * P_s: desired signal |h^H h|^2 / M^2
 * P_i_in: intra-cell interference, averaged over the K-1 co-scheduled users
 * P_i_out: inter-cell interference from the L_p contaminated BSs
 * P_e: CSI-error power, deterministic because the receiver does not know the error
 */
struct SinrBreakdown
{
    double P_s = 0.0;
    double P_i_in = 0.0;
    double P_i_out = 0.0;
    double P_e = 0.0;
    double sinr = 0.0;
    double rate = 0.0;
};

struct MomentReport
{
    double mean = 0.0;
    double scv = 0.0;
    long n_trials = 0;
    double standard_error = 0.0;
};

// Estimates held by one BS of the cluster: its own users (columns) and the
// estimate of the victim user, which equals a column of `own` for the victim's cell.
template <typename T = double>
struct CellEstimates
{
    CMatrix<T> own;
    CVector<T> victim;
};

double pe_closed_form(const NetworkConfig &cfg);

// SINR = M P_s / ((K-1) P_i_in + M K L_p P_i_out + K (L_p+1) P_e + K Q / rho).
double instantaneous_sinr(const SinrBreakdown &b, const NetworkConfig &cfg);

// Same denominator with P_s replaced by its limit Q^2.
double approximate_sinr(const SinrBreakdown &b, const NetworkConfig &cfg);

inline double rate_from_sinr(double sinr) { return std::log2(1.0 + sinr); }

/*!
 * Computes the breakdown for user `m` of cells[0] from one coherent set of
 * estimates. cells[1..] are the L_p BSs contaminated by the victim cell. Works
 * in any coordinate system that preserves inner products (full antenna space
 * or the Delta-dimensional beamspace).
 */
template <typename T>
SinrBreakdown sinr_components(std::span<const CellEstimates<T>> cells, int m,
                              const NetworkConfig &cfg)
{
    if (cells.size() != static_cast<std::size_t>(cfg.L_p) + 1)
        throw DomainError("expected estimates for the own cell and each contaminating cell");
    const auto &own = cells[0].own;
    if (own.cols() != cfg.K || m < 0 || m >= cfg.K)
        throw DomainError("user index or estimate matrix does not match K");

    const double M = cfg.M;
    const int K = cfg.K;
    SinrBreakdown b;

    const CVector<T> gains = own.adjoint() * own.col(m);
    const double norm = std::real(gains(m));
    b.P_s = norm * norm / (M * M);

    if (K > 1)
    {
        double sum = 0.0;
        for (int k = 0; k < K; ++k)
            if (k != m)
                sum += std::norm(gains(k));
        b.P_i_in = sum / (M * (K - 1));
    }

    if (cfg.L_p > 0)
    {
        double sum = 0.0;
        for (std::size_t l = 1; l < cells.size(); ++l)
            sum += (cells[l].own.adjoint() * cells[l].victim).squaredNorm();
        b.P_i_out = sum / (M * M * K * cfg.L_p);
    }

    b.P_e = pe_closed_form(cfg);
    b.sinr = instantaneous_sinr(b, cfg);
    b.rate = rate_from_sinr(b.sinr);
    return b;
}

/*!
 * Means and SCVs of the random SINR components.
 *
 * mean_P_s is the exact Q^2 (1 + 1/(Mc)); the SCV entries labelled `order`
 * are the leading-order expressions, the others are exact for Gaussian
 * estimates. P_i_in statistics are absent for K = 1 and P_i_out statistics
 * for L_p = 0.
 */
struct ComponentMoments
{
    double mean_P_s = 0.0;
    double scv_P_s = 0.0;
    double scv_P_s_order = 0.0;
    std::optional<double> mean_P_i_in;
    std::optional<double> scv_P_i_in;
    std::optional<double> scv_P_i_in_order;
    std::optional<double> mean_P_i_out;
    std::optional<double> scv_P_i_out;
    double P_e = 0.0;
};

ComponentMoments component_moments(const NetworkConfig &cfg);

// Second and fourth moments of inner products of MMSE estimates. Naming:
// l, s index cells; k, i, m index users; "same_cell" means s = l.
enum class QuarticCase
{
    norm,                    // E{h_lk^H h_lk}
    norm_product_same,       // E{|h_lk|^2 |h_si|^2}, s = l, i = k
    norm_product_distinct,   // (s, i) != (l, k)
    cross_same,              // E{|h_lm^H h_lk|^2}, k = m
    cross_distinct,          // k != m
    fourth_same_all,         // E{|h_lm^H h_lk|^2 |h_sm^H h_si|^2}, s = l, i = k = m
    fourth_same_repeat,      // s = l, i = k, k != m
    fourth_same_shared,      // s = l, i != k, k = m or i = m
    fourth_same_disjoint,    // s = l, i != k, k != m, i != m
    fourth_other_all,        // s != l, i = k = m
    fourth_other_disjoint,   // s != l, k != m, i != m
    fourth_other_shared      // s != l, i != k, k = m or i = m
};

QuarticCase parse_quartic_case(std::string_view label);
std::string_view to_string(QuarticCase which);

double gaussian_quartic_moments(int Delta, double Q, double c, QuarticCase which);

// Jensen lower bound 1 / E{1/SINR}; throws ValidityError for a non-positive denominator.
double effective_sinr_mrt(const NetworkConfig &cfg);
double rate_lower_bound(const NetworkConfig &cfg);
double sum_rate_lower_bound(const NetworkConfig &cfg);

} // namespace mimo_lab

#endif

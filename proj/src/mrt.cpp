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

#include "mimo_lab/mrt.hpp"

#include <array>
#include <string>
#include <utility>

namespace mimo_lab
{

double pe_closed_form(const NetworkConfig &cfg)
{
    const double Q = csi_quality(cfg).Q;
    const double c = cfg.effective_c();
    return Q / ((cfg.L_p + 1) * c) * (1.0 - Q + cfg.alpha * (1.0 - cfg.alpha * Q) * cfg.L_p);
}

namespace
{
double interference_plus_noise(const SinrBreakdown &b, const NetworkConfig &cfg)
{
    const double Q = csi_quality(cfg).Q;
    const double K = cfg.K;
    return (K - 1.0) * b.P_i_in + cfg.M * K * cfg.L_p * b.P_i_out + K * (cfg.L_p + 1) * b.P_e +
           K * Q / cfg.rho;
}
} // namespace

double instantaneous_sinr(const SinrBreakdown &b, const NetworkConfig &cfg)
{
    return cfg.M * b.P_s / interference_plus_noise(b, cfg);
}

double approximate_sinr(const SinrBreakdown &b, const NetworkConfig &cfg)
{
    const double Q = csi_quality(cfg).Q;
    return cfg.M * Q * Q / interference_plus_noise(b, cfg);
}

ComponentMoments component_moments(const NetworkConfig &cfg)
{
    cfg.validate();
    const double Q = csi_quality(cfg).Q;
    const double c = cfg.effective_c();
    const double D = cfg.delta();
    const double Mc = D;
    const double K = cfg.K;

    ComponentMoments out;
    out.mean_P_s = Q * Q * (1.0 + 1.0 / Mc);
    out.scv_P_s = (4.0 * D + 6.0) / (D * (D + 1.0));
    out.scv_P_s_order = 4.0 / Mc;
    if (cfg.K > 1)
    {
        out.mean_P_i_in = Q * Q / c;
        out.scv_P_i_in = (D + K) / (D * (K - 1.0));
        out.scv_P_i_in_order = 1.0 / Mc + 1.0 / (K - 1.0);
    }
    if (cfg.L_p > 0)
    {
        const double a = cfg.alpha;
        out.mean_P_i_out = a * a * Q * Q * (1.0 / K + 1.0 / Mc);
        const double ratio = 1.0 + K / Mc;
        out.scv_P_i_out = 1.0 / (cfg.L_p * Mc) *
                          (4.0 + 5.0 * (K + 1.0) / Mc + (K * K + K + 4.0) / (Mc * Mc)) /
                          (ratio * ratio);
    }
    out.P_e = pe_closed_form(cfg);
    return out;
}

namespace
{
constexpr std::array<std::pair<QuarticCase, std::string_view>, 12> kQuarticLabels{{
    {QuarticCase::norm, "norm"},
    {QuarticCase::norm_product_same, "norm_product_same"},
    {QuarticCase::norm_product_distinct, "norm_product_distinct"},
    {QuarticCase::cross_same, "cross_same"},
    {QuarticCase::cross_distinct, "cross_distinct"},
    {QuarticCase::fourth_same_all, "fourth_same_all"},
    {QuarticCase::fourth_same_repeat, "fourth_same_repeat"},
    {QuarticCase::fourth_same_shared, "fourth_same_shared"},
    {QuarticCase::fourth_same_disjoint, "fourth_same_disjoint"},
    {QuarticCase::fourth_other_all, "fourth_other_all"},
    {QuarticCase::fourth_other_disjoint, "fourth_other_disjoint"},
    {QuarticCase::fourth_other_shared, "fourth_other_shared"},
}};
} // namespace

QuarticCase parse_quartic_case(std::string_view label)
{
    for (const auto &[which, name] : kQuarticLabels)
        if (name == label)
            return which;
    throw DomainError("unknown moment case '" + std::string(label) + "'");
}

std::string_view to_string(QuarticCase which)
{
    for (const auto &[w, name] : kQuarticLabels)
        if (w == which)
            return name;
    throw DomainError("unknown moment case");
}

double gaussian_quartic_moments(int Delta, double Q, double c, QuarticCase which)
{
    if (Delta < 1)
        throw DomainError("Delta must be at least 1");
    const double D = Delta;
    const double s = Q / c;
    const double s2 = s * s;
    const double s4 = s2 * s2;
    switch (which)
    {
    case QuarticCase::norm:
        return s * D;
    case QuarticCase::norm_product_same:
    case QuarticCase::cross_same:
        return s2 * D * (D + 1.0);
    case QuarticCase::norm_product_distinct:
        return s2 * D * D;
    case QuarticCase::cross_distinct:
        return s2 * D;
    case QuarticCase::fourth_same_all:
        return s4 * D * (D + 1.0) * (D + 2.0) * (D + 3.0);
    case QuarticCase::fourth_same_repeat:
        // Leading-order value; the exact Gaussian moment is 2 D (D + 1).
        return s4 * 2.0 * D * D;
    case QuarticCase::fourth_same_shared:
        return s4 * D * (D + 1.0) * (D + 2.0);
    case QuarticCase::fourth_same_disjoint:
        return s4 * D * (D + 1.0);
    case QuarticCase::fourth_other_all:
        return s4 * D * D * (D + 1.0) * (D + 1.0);
    case QuarticCase::fourth_other_disjoint:
        return s4 * D * D;
    case QuarticCase::fourth_other_shared:
        return s4 * D * D * (D + 1.0);
    }
    throw DomainError("unknown moment case");
}

double effective_sinr_mrt(const NetworkConfig &cfg)
{
    cfg.validate();
    const double Q = csi_quality(cfg).Q;
    const double Mc = cfg.delta();
    const double M = cfg.M;
    const double K = cfg.K;
    const double a = cfg.alpha;
    const double denom = K * (1.0 + a * cfg.L_p) / (Q * Mc) + cfg.L_p * a * a - 1.0 / Mc +
                         K / (M * Q * cfg.rho);
    if (!(denom > 0.0))
        throw ValidityError("asymptotic effective SINR is invalid at M = " +
                            std::to_string(cfg.M) + " (non-positive denominator)");
    return 1.0 / denom;
}

double rate_lower_bound(const NetworkConfig &cfg) { return rate_from_sinr(effective_sinr_mrt(cfg)); }

double sum_rate_lower_bound(const NetworkConfig &cfg)
{
    return static_cast<double>(cfg.K) * cfg.L * rate_lower_bound(cfg);
}

} // namespace mimo_lab

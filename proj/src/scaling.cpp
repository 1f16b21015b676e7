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

#include "mimo_lab/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "mimo_lab/estimation.hpp"

namespace mimo_lab
{

void ScalingExponents::validate() const
{
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(r_t) || !in_unit(r_k) || !in_unit(r_rho))
        throw ConfigError("scaling exponents r_t, r_k, r_rho must lie in [0, 1]");
    if (!perfect_pce && !in_unit(r_gamma))
        throw ConfigError("contamination decay exponent r_gamma must lie in [0, 1]");
}

double scaling_exponent(const ScalingExponents &s)
{
    const double power_limited = 1.0 - s.r_t - s.r_k - s.r_rho;
    return s.perfect_pce ? power_limited : std::min(power_limited, s.r_gamma);
}

bool non_decreasing_check(const ScalingExponents &s)
{
    return s.r_t + s.r_k + s.r_rho <= 1.0 + kExponentTolerance;
}

bool deterministic_check(const ScalingExponents &s)
{
    if (!s.perfect_pce)
        return true;
    return 2.0 * s.r_t + s.r_k + 2.0 * s.r_rho >= 1.0 - kExponentTolerance;
}

namespace
{
int branch_sign(const ScalingExponents &s)
{
    const double g = 1.0 - s.r_t - s.r_k - s.r_rho;
    if (std::abs(g) <= kExponentTolerance)
        return 0;
    return g > 0.0 ? 1 : -1;
}

ApplicabilityVerdict single_condition(std::string dominant, std::string regime, double lhs,
                                      double rhs, double threshold)
{
    ApplicabilityVerdict v;
    v.dominant_term = std::move(dominant);
    v.regime = std::move(regime);
    v.margin = lhs / rhs;
    v.threshold = threshold;
    v.applicable = v.margin >= threshold;
    return v;
}
} // namespace

ApplicabilityVerdict mrt_applicability(const NetworkConfig &cfg, const ScalingExponents &s,
                                       double threshold)
{
    cfg.validate();
    const double Q = csi_quality(cfg).Q;
    const double c = cfg.effective_c();
    const double M = cfg.M;
    const double K = cfg.K;
    const double a = cfg.alpha;

    if (cfg.L_p == 0)
    {
        auto v = single_condition("noise K/(MQ rho)", "perfect-pce", 1.0 / cfg.rho,
                                  (1.0 - Q / K) / c, threshold);
        v.diagnostics.emplace_back("inv_rho", 1.0 / cfg.rho);
        v.diagnostics.emplace_back("interference_floor", (1.0 - Q / K) / c);
        // Alternative sufficient condition for constant power: K/Q >> 1/(1 + c/rho).
        v.diagnostics.emplace_back("constant_power_margin", (K / Q) * (1.0 + c / cfg.rho));
        return v;
    }

    const double chi = K / Q * (1.0 + a * cfg.L_p) - 1.0;
    const double noise = K / (M * Q * cfg.rho);
    const double contamination = cfg.L_p * a * a;
    const double Mc = cfg.delta();

    const double noise_margin = noise / (chi / Mc + contamination);
    const double contamination_margin = contamination / ((chi / c + K / (Q * cfg.rho)) / M);

    ApplicabilityVerdict v;
    switch (branch_sign(s))
    {
    case -1:
        v = single_condition("noise K/(MQ rho)", "noise-limited", noise, chi / Mc + contamination,
                             threshold);
        break;
    case 1:
        v = single_condition("contamination L_p alpha^2", "contamination-limited", contamination,
                             (chi / c + K / (Q * cfg.rho)) / M, threshold);
        break;
    default:
        v.threshold = threshold;
        v.margin = std::max(noise_margin, contamination_margin);
        v.applicable = v.margin >= threshold;
        v.dominant_term = contamination_margin >= noise_margin ? "contamination L_p alpha^2"
                                                               : "noise K/(MQ rho)";
        if (contamination_margin >= threshold && noise_margin >= threshold)
            v.regime = "balanced: both conditions hold";
        else if (contamination_margin >= threshold)
            v.regime = "balanced: contamination condition holds";
        else if (noise_margin >= threshold)
            v.regime = "balanced: noise condition holds";
        else
            v.regime = "balanced: neither condition holds";
        break;
    }
    v.diagnostics.emplace_back("chi", chi);
    v.diagnostics.emplace_back("noise_margin", noise_margin);
    v.diagnostics.emplace_back("contamination_margin", contamination_margin);
    return v;
}

ApplicabilityVerdict zf_applicability(const NetworkConfig &cfg, const ScalingExponents &s,
                                      double threshold)
{
    cfg.validate();
    const int delta = cfg.delta();
    if (delta <= cfg.K)
        throw ConfigError("ZF applicability needs Delta > K");

    const double Q = csi_quality(cfg).Q;
    const double c = cfg.effective_c();
    const double M = cfg.M;
    const double K = cfg.K;
    const double a = cfg.alpha;
    const double chi_t = 1.0 + a * cfg.L_p - Q * (1.0 + a * a * cfg.L_p);
    const double dof_margin = delta / K;

    ApplicabilityVerdict v;
    v.threshold = threshold;
    v.diagnostics.emplace_back("chi_tilde", chi_t);
    v.diagnostics.emplace_back("dof_margin", dof_margin);

    auto conjunction = [&](double first, double second) {
        return std::min(first, second);
    };

    if (cfg.L_p == 0)
    {
        const double power_margin = (1.0 / cfg.rho) / ((1.0 - Q) / c);
        v.diagnostics.emplace_back("power_margin", power_margin);
        v.dominant_term = "noise cK/(rho Q (Mc-K))";
        if (std::abs(s.r_k - 1.0) <= kExponentTolerance)
        {
            v.regime = "perfect-pce, users linear in M";
            v.margin = power_margin;
        }
        else
        {
            v.regime = "perfect-pce, users sublinear in M";
            v.margin = conjunction(power_margin, dof_margin);
        }
        v.applicable = v.margin >= threshold;
        return v;
    }

    const double contamination = cfg.L_p * a * a;
    const double contamination_margin =
        contamination / (K * (c / cfg.rho + chi_t) / (Q * (delta - K)));
    const double noise_margin =
        (1.0 / cfg.rho) / (a * a * cfg.L_p * Q * M / K + chi_t / c);
    const double balanced_noise_margin = (1.0 / cfg.rho) / (chi_t / c);
    v.diagnostics.emplace_back("contamination_margin", contamination_margin);
    v.diagnostics.emplace_back("noise_margin", noise_margin);

    switch (branch_sign(s))
    {
    case -1:
        v.dominant_term = "noise cK/(rho Q (Mc-K))";
        v.regime = "noise-limited";
        v.margin = conjunction(noise_margin, dof_margin);
        break;
    case 1:
        v.dominant_term = "contamination L_p alpha^2";
        v.regime = "contamination-limited";
        v.margin = contamination_margin;
        break;
    default:
    {
        const double alt = conjunction(balanced_noise_margin, dof_margin);
        v.diagnostics.emplace_back("balanced_noise_margin", balanced_noise_margin);
        v.margin = std::max(contamination_margin, alt);
        v.dominant_term = contamination_margin >= alt ? "contamination L_p alpha^2"
                                                      : "noise cK/(rho Q (Mc-K))";
        if (contamination_margin >= threshold && alt >= threshold)
            v.regime = "balanced: both conditions hold";
        else if (contamination_margin >= threshold)
            v.regime = "balanced: contamination condition holds";
        else if (alt >= threshold)
            v.regime = "balanced: noise condition holds";
        else
            v.regime = "balanced: neither condition holds";
        break;
    }
    }
    v.applicable = v.margin >= threshold;
    return v;
}

namespace
{
// Returns (intercept, slope) of the OLS fit of log(value) on log(M).
std::pair<double, double> loglog_fit(std::span<const Point> points)
{
    if (points.size() < 3)
        throw DomainError("exponent fitting needs at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        if (!(points[i].value > 0.0) || !(points[i].M > 0.0))
            throw DomainError("exponent fitting needs positive M and values");
        if (i > 0 && !(points[i].M > points[i - 1].M))
            throw DomainError("M must be strictly increasing");
    }
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto &p : points)
    {
        sx += std::log(p.M);
        sy += std::log(p.value);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto &p : points)
    {
        const double dx = std::log(p.M) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.value) - my);
    }
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}
} // namespace

double estimate_exponent(std::span<const Point> points) { return loglog_fit(points).second; }

PowerFit fit_power_decay(std::span<const Point> points)
{
    const auto [intercept, slope] = loglog_fit(points);
    return {std::exp(intercept), -slope};
}

} // namespace mimo_lab

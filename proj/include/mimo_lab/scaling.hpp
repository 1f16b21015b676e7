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

#ifndef MIMO_LAB_SCALING_HPP
#define MIMO_LAB_SCALING_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mimo_lab/config.hpp"

namespace mimo_lab
{

/*!
 * Growth exponents of the network parameters with M:
 * K ~ M^r_k, 1/rho ~ M^r_rho, 1/E_t ~ M^r_t and, for imperfect contamination
 * elimination, 1/L_p ~ M^r_gamma (r_gamma = 0 for a constant L_p).
 */
struct ScalingExponents
{
    double r_t = 0.0;
    double r_k = 0.0;
    double r_rho = 0.0;
    double r_gamma = 0.0;
    bool perfect_pce = true;

    void validate() const;
};

// Exponents closer than this are treated as equal when selecting branches.
inline constexpr double kExponentTolerance = 1e-9;

// Dominance factor used for "a >> b": a >= 10 b.
inline constexpr double kDefaultDominance = 10.0;

// SINR exponent r_s: 1 - r_t - r_k - r_rho, capped at r_gamma without perfect PCE.
double scaling_exponent(const ScalingExponents &s);

// r_t + r_k + r_rho <= 1.
bool non_decreasing_check(const ScalingExponents &s);

// Sufficient condition for an asymptotically deterministic MRT SINR.
bool deterministic_check(const ScalingExponents &s);

struct ApplicabilityVerdict
{
    bool applicable = false;
    std::string dominant_term;
    double margin = 0.0;
    std::string regime;
    double threshold = kDefaultDominance;
    // Intermediate values (chi, individual ratios) in evaluation order.
    std::vector<std::pair<std::string, double>> diagnostics;
};

/*!
 * Whether the MRT scaling law is accurate at the finite M held in cfg.
 *
 * With L_p = 0 the noise term K/(MQ rho) must dominate:
 * 1/rho >> (1/c)(1 - Q/K). Otherwise the branch follows the sign of
 * 1 - r_t - r_k - r_rho and compares the contamination term L_p alpha^2
 * against the rest of the denominator, with chi = K(1 + alpha L_p)/Q - 1.
 */
ApplicabilityVerdict mrt_applicability(const NetworkConfig &cfg, const ScalingExponents &s,
                                       double threshold = kDefaultDominance);

// ZF counterpart; every clause of a conjunction must meet the threshold.
ApplicabilityVerdict zf_applicability(const NetworkConfig &cfg, const ScalingExponents &s,
                                      double threshold = kDefaultDominance);

struct Point
{
    double M = 0.0;
    double value = 0.0;
};

// Least-squares slope of log(value) against log(M).
double estimate_exponent(std::span<const Point> points);

struct PowerFit
{
    double a = 0.0;
    double b = 0.0;
};

// Fits value = a / M^b by least squares in log-log space.
PowerFit fit_power_decay(std::span<const Point> points);

} // namespace mimo_lab

#endif

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

#ifndef MIMO_LAB_ESTIMATION_HPP
#define MIMO_LAB_ESTIMATION_HPP

#include <cmath>
#include <span>

#include "mimo_lab/channel.hpp"

namespace mimo_lab
{

struct CsiQuality
{
    double Q = 0.0;
};

// Q = 1 / (c/E_t + 1 + L_p alpha), with c read as Delta/M.
CsiQuality csi_quality(const NetworkConfig &cfg);
double csi_quality(double c, double E_t, double alpha, int L_p);

/*!
 * Ratio between the estimate of a link and the own-cell estimate sharing the
 * same pilot: c beta, i.e. 1 for the own cell (index 0) and alpha for each of
 * the L_p contaminating cells (indices 1..L_p).
 */
double alias_factor(int cell, const NetworkConfig &cfg);

// MMSE estimate of one link together with its error and the scales of the
// covariances cQ beta^2 A A^H (estimate) and beta (1 - cQ beta) A A^H (error).
template <typename T = double>
struct CsiEstimate
{
    CVector<T> h_hat;
    CVector<T> h_err;
    double cov_hat_scale = 0.0;
    double cov_err_scale = 0.0;
};

enum class EstimationMode
{
    projector,  // scalar times A A^H y
    literal     // forms and inverts the M x M observation covariance
};

// y = sqrt(E_t) (h_own + sum h_contaminating) + n with n ~ CN(0, I_M).
template <typename T>
CVector<T> training_observation(const ChannelDraw<T> &own,
                                std::span<const ChannelDraw<T>> contaminating, double E_t,
                                RngStream &rng)
{
    if (E_t < 0.0)
        throw DomainError("training energy must be non-negative");
    CVector<T> sum = own.h;
    for (const auto &draw : contaminating)
    {
        if (draw.h.size() != own.h.size())
            throw DomainError("channel lengths differ");
        sum += draw.h;
    }
    CVector<T> noise(own.h.size());
    fill_complex_normal(rng, noise);
    return static_cast<T>(std::sqrt(E_t)) * sum + noise;
}

/*!
 * MMSE filter sqrt(E_t) R_target Cov{y}^{-1} y for a link with path loss
 * target_beta.
 *
 * Under the shared-direction model Cov{y} = s A A^H + I, whose inverse acts as
 * 1/(1+s) on span(A); the projector mode therefore returns
 * sqrt(E_t) target_beta / (1+s) * A (A^H y), which for the own cell equals
 * (Q / sqrt(E_t)) A A^H y. The literal mode solves the M x M system and is
 * meant for cross-checking at small M.
 */
template <typename T>
CVector<T> mmse_filter(const CVector<T> &y, const DirectionBasis<T> &basis,
                       const NetworkConfig &cfg, double target_beta,
                       EstimationMode mode = EstimationMode::projector)
{
    if (y.size() != basis.A.rows())
        throw DomainError("observation length does not match the direction basis");
    const double beta_own = pathloss_beta(Link::own, cfg);
    const double beta_cross = pathloss_beta(Link::cross, cfg);
    const double s = cfg.E_t * (beta_own + cfg.L_p * beta_cross);

    if (mode == EstimationMode::projector)
    {
        const T gain = static_cast<T>(std::sqrt(cfg.E_t) * target_beta / (1.0 + s));
        return gain * (basis.A * (basis.A.adjoint() * y));
    }

    const CMatrix<T> projector = basis.A * basis.A.adjoint();
    const Eigen::Index M = y.size();
    const CMatrix<T> cov = static_cast<T>(s) * projector + CMatrix<T>::Identity(M, M);
    const CVector<T> whitened = cov.ldlt().solve(y);
    return static_cast<T>(std::sqrt(cfg.E_t) * target_beta) * (projector * whitened);
}

// Estimates the link `target` from the training observation y.
template <typename T>
CsiEstimate<T> mmse_estimate(const CVector<T> &y, const DirectionBasis<T> &basis,
                             const NetworkConfig &cfg, const ChannelDraw<T> &target,
                             EstimationMode mode = EstimationMode::projector)
{
    if (target.h.size() != y.size())
        throw DomainError("target channel length does not match the observation");
    const double c = cfg.effective_c();
    const double Q = csi_quality(cfg).Q;
    CsiEstimate<T> est;
    est.h_hat = mmse_filter(y, basis, cfg, target.beta, mode);
    est.h_err = target.h - est.h_hat;
    est.cov_hat_scale = c * Q * target.beta * target.beta;
    est.cov_err_scale = target.beta * (1.0 - c * Q * target.beta);
    return est;
}

} // namespace mimo_lab

#endif

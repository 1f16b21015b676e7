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

#ifndef MIMO_LAB_ZF_HPP
#define MIMO_LAB_ZF_HPP

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "mimo_lab/estimation.hpp"

namespace mimo_lab
{

// Gram matrices with a condition estimate above this are treated as singular.
inline constexpr double kZfConditionLimit = 1e12;

struct ZfQuantities
{
    double lambda = 0.0;     // power constraint coefficient
    double p_e_bar = 0.0;    // CSI-error power
    double sinr = 0.0;       // deterministic ZF SINR
    double chi_tilde = 0.0;  // 1 + alpha L_p - Q (1 + alpha^2 L_p)
};

// W = H (H^H H)^{-1}; throws NumericalError for a (near) rank-deficient H.
template <typename T>
CMatrix<T> zf_precoder(const CMatrix<T> &H_hat)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (H_hat.cols() > H_hat.rows())
        throw NumericalError("ZF needs at least as many dimensions as users", inf);
    const CMatrix<T> gram = H_hat.adjoint() * H_hat;
    Eigen::LLT<CMatrix<T>> llt(gram);
    const double rcond = llt.info() == Eigen::Success ? static_cast<double>(llt.rcond()) : 0.0;
    const double condition = rcond > 0.0 ? 1.0 / rcond : inf;
    if (condition > kZfConditionLimit)
        throw NumericalError("singular Gram matrix in ZF precoder (condition estimate " +
                                 std::to_string(condition) + ")",
                             condition);
    return H_hat * llt.solve(CMatrix<T>::Identity(gram.rows(), gram.cols()));
}

// 1 / E{tr (H^H H)^{-1}} = M Q (Delta - K) / (Delta K); needs Delta > K.
double zf_lambda(const NetworkConfig &cfg);

// (rho / c) [1 - Q + alpha (1 - alpha Q) L_p].
double zf_error_power(const NetworkConfig &cfg);

double zf_chi_tilde(const NetworkConfig &cfg);

double zf_sinr(const NetworkConfig &cfg);

ZfQuantities zf_quantities(const NetworkConfig &cfg);

// SINR of one realization given the CSI-error leakage sum_l |W_ll^H e_l|^2.
double zf_realized_sinr(double error_leakage, const NetworkConfig &cfg);

/*!
 * Leakage of the victim's estimation errors through the precoders of the BSs
 * of the cluster: sum over l of ||W_ll^H e_l||^2.
 */
template <typename T>
double zf_error_leakage(std::span<const CMatrix<T>> precoders, std::span<const CVector<T>> errors)
{
    if (precoders.size() != errors.size())
        throw DomainError("one error vector is needed per precoder");
    double sum = 0.0;
    for (std::size_t l = 0; l < precoders.size(); ++l)
        sum += (precoders[l].adjoint() * errors[l]).squaredNorm();
    return sum;
}

} // namespace mimo_lab

#endif

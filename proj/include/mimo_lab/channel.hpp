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

#ifndef MIMO_LAB_CHANNEL_HPP
#define MIMO_LAB_CHANNEL_HPP

#include <cmath>
#include <numbers>

#include "mimo_lab/config.hpp"
#include "mimo_lab/random.hpp"

namespace mimo_lab
{

enum class Link
{
    own,   // user and BS in the same cell
    cross  // user in a cell that contaminates the BS
};

//! Orthonormal channel direction matrix A (M x Delta) and its correlation level.
template <typename T = double>
struct DirectionBasis
{
    CMatrix<T> A;
    int Delta = 0;
    double c = 0.0;

    int M() const { return static_cast<int>(A.rows()); }
};

/*!
 * First Delta = round(c M) columns of the unitary M-point DFT matrix,
 * A(m, d) = exp(-2 pi i m d / M) / sqrt(M).
 */
template <typename T = double>
DirectionBasis<T> build_direction_basis(int M, double c)
{
    const int delta = direction_count(M, c);
    DirectionBasis<T> basis;
    basis.Delta = delta;
    basis.c = c;
    basis.A.resize(M, delta);
    const T scale = T(1) / std::sqrt(static_cast<T>(M));
    for (int d = 0; d < delta; ++d)
        for (int m = 0; m < M; ++m)
        {
            // Reduce the phase index modulo M to keep the argument small.
            const long long k = (static_cast<long long>(m) * d) % M;
            const T phase = -T(2) * std::numbers::pi_v<T> * static_cast<T>(k) / static_cast<T>(M);
            basis.A(m, d) = std::polar(scale, phase);
        }
    return basis;
}

// Large-scale fading M/Delta for own-cell links and alpha M/Delta for contaminating links.
inline double pathloss_beta(Link link, int M, double c, double alpha)
{
    const double ratio = static_cast<double>(M) / direction_count(M, c);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("inter-cell fading alpha must lie in (0, 1)");
    return link == Link::own ? ratio : alpha * ratio;
}

inline double pathloss_beta(Link link, const NetworkConfig &cfg)
{
    return pathloss_beta(link, cfg.M, cfg.c, cfg.alpha);
}

// R = beta A A^H.
template <typename T>
CMatrix<T> correlation_matrix(const DirectionBasis<T> &basis, double beta)
{
    if (!(beta > 0.0))
        throw DomainError("path-loss factor beta must be positive");
    return static_cast<T>(beta) * basis.A * basis.A.adjoint();
}

template <typename T = double>
struct ChannelDraw
{
    CVector<T> h;  // uplink channel, length M
    CVector<T> z;  // fast-fading innovations, length Delta
    double beta = 0.0;
};

// h = R^{1/2} z = sqrt(beta) A z with z ~ CN(0, I_Delta).
template <typename T>
ChannelDraw<T> draw_channel(const DirectionBasis<T> &basis, double beta, RngStream &rng)
{
    ChannelDraw<T> draw;
    draw.beta = beta;
    draw.z.resize(basis.Delta);
    fill_complex_normal(rng, draw.z);
    draw.h = static_cast<T>(std::sqrt(beta)) * (basis.A * draw.z);
    return draw;
}

} // namespace mimo_lab

#endif

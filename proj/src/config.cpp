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

#include "mimo_lab/config.hpp"

#include <cmath>
#include <sstream>

namespace mimo_lab
{

int direction_count(int M, double c)
{
    if (M < 2)
        throw ConfigError("antenna count M must be at least 2, got " + std::to_string(M));
    if (!(c > 0.0 && c <= 1.0))
        throw ConfigError("correlation level c must lie in (0, 1]");

    const int delta = static_cast<int>(std::floor(c * M + 0.5));
    if (delta < 1 || delta > M)
        throw ConfigError("round(c M) must lie in [1, M]");
    return delta;
}

int NetworkConfig::delta() const { return direction_count(M, c); }

double NetworkConfig::effective_c() const { return static_cast<double>(delta()) / M; }

void NetworkConfig::validate() const
{
    std::ostringstream err;
    if (L < 2)
        err << "cell count L must be at least 2 (got " << L << ")";
    else if (K < 1)
        err << "user count K must be at least 1 (got " << K << ")";
    else if (!(alpha > 0.0 && alpha < 1.0))
        err << "inter-cell fading alpha must lie in (0, 1) (got " << alpha << ")";
    else if (L_p < 0 || L_p > L - 1)
        err << "contaminating cell count L_p must lie in [0, L-1] (got " << L_p << ")";
    else if (!(E_t > 0.0) || !std::isfinite(E_t))
        err << "training energy E_t must be positive (got " << E_t << ")";
    else if (!(rho > 0.0) || !std::isfinite(rho))
        err << "transmit SNR rho must be positive (got " << rho << ")";
    if (!err.str().empty())
        throw ConfigError(err.str());

    const int d = delta();
    if (K > d)
        throw ConfigError("user count K = " + std::to_string(K) + " exceeds the " +
                          std::to_string(d) + " channel directions at M = " + std::to_string(M));
}

std::string to_string(Precoder p) { return p == Precoder::mrt ? "mrt" : "zf"; }

Precoder parse_precoder(const std::string &name)
{
    if (name == "mrt" || name == "MRT")
        return Precoder::mrt;
    if (name == "zf" || name == "ZF")
        return Precoder::zf;
    throw ConfigError("unknown precoder '" + name + "' (expected mrt or zf)");
}

} // namespace mimo_lab

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

#include "mimo_lab/estimation.hpp"

#include <string>

namespace mimo_lab
{

double csi_quality(double c, double E_t, double alpha, int L_p)
{
    if (!(E_t > 0.0))
        throw DomainError("training energy must be positive");
    return 1.0 / (c / E_t + 1.0 + L_p * alpha);
}

CsiQuality csi_quality(const NetworkConfig &cfg)
{
    return {csi_quality(cfg.effective_c(), cfg.E_t, cfg.alpha, cfg.L_p)};
}

double alias_factor(int cell, const NetworkConfig &cfg)
{
    if (cell < 0 || cell > cfg.L_p)
        throw DomainError("cell " + std::to_string(cell) +
                          " is neither the own cell nor one of the " + std::to_string(cfg.L_p) +
                          " contaminating cells");
    const Link link = cell == 0 ? Link::own : Link::cross;
    return cfg.effective_c() * pathloss_beta(link, cfg);
}

} // namespace mimo_lab

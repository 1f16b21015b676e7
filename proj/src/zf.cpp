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

#include "mimo_lab/zf.hpp"

namespace mimo_lab
{

namespace
{
void require_zf_margin(const NetworkConfig &cfg)
{
    cfg.validate();
    if (cfg.delta() <= cfg.K)
        throw ConfigError("ZF needs Delta > K (Delta = " + std::to_string(cfg.delta()) +
                          ", K = " + std::to_string(cfg.K) + ")");
}
} // namespace

double zf_lambda(const NetworkConfig &cfg)
{
    require_zf_margin(cfg);
    const double Q = csi_quality(cfg).Q;
    const double D = cfg.delta();
    const double K = cfg.K;
    return cfg.M * Q * (D - K) / (D * K);
}

double zf_error_power(const NetworkConfig &cfg)
{
    require_zf_margin(cfg);
    const double Q = csi_quality(cfg).Q;
    const double a = cfg.alpha;
    return cfg.rho / cfg.effective_c() * (1.0 - Q + a * (1.0 - a * Q) * cfg.L_p);
}

double zf_chi_tilde(const NetworkConfig &cfg)
{
    const double Q = csi_quality(cfg).Q;
    const double a = cfg.alpha;
    return 1.0 + a * cfg.L_p - Q * (1.0 + a * a * cfg.L_p);
}

double zf_sinr(const NetworkConfig &cfg)
{
    require_zf_margin(cfg);
    const double Q = csi_quality(cfg).Q;
    const double c = cfg.effective_c();
    const double margin = cfg.delta() - cfg.K;
    const double K = cfg.K;
    const double a = cfg.alpha;
    return 1.0 / (c * K / (cfg.rho * Q * margin) + a * a * cfg.L_p +
                  K * zf_chi_tilde(cfg) / (Q * margin));
}

ZfQuantities zf_quantities(const NetworkConfig &cfg)
{
    return {zf_lambda(cfg), zf_error_power(cfg), zf_sinr(cfg), zf_chi_tilde(cfg)};
}

double zf_realized_sinr(double error_leakage, const NetworkConfig &cfg)
{
    const double gain = cfg.rho * zf_lambda(cfg);
    const double a = cfg.alpha;
    return gain / (1.0 + a * a * gain * cfg.L_p + gain * error_leakage);
}

} // namespace mimo_lab

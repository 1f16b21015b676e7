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

#ifndef MIMO_LAB_CONFIG_HPP
#define MIMO_LAB_CONFIG_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mimo_lab
{

// Dense complex types used throughout the library, templated on the real scalar.
template <typename T>
using CVector = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;

template <typename T>
using CMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

// Invalid scenario parameters (exit code 1 at the command line).
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the set an operation is defined on.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// A closed form whose asymptotic derivation breaks down at the requested point,
// e.g. a non-positive denominator of the MRT effective SINR at tiny M.
class ValidityError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Ill-conditioned linear algebra (singular Gram matrix in ZF).
class NumericalError : public std::runtime_error
{
  public:
    NumericalError(const std::string &what, double condition)
        : std::runtime_error(what), condition_(condition) {}

    double condition() const noexcept { return condition_; }

  private:
    double condition_;
};

/*!
 * Static parameters of a homogeneous multi-cell massive MIMO network.
 *
 * All cells share the correlation level, the inter-cell fading, the training
 * energy, the transmit SNR and the user count. Energies and SNRs are linear.
 */
struct NetworkConfig
{
    int L = 7;           // number of cells
    int M = 100;         // BS antennas
    int K = 10;          // users per cell
    double c = 0.6;      // spatial correlation level, Delta = round(c M)
    double alpha = 0.3;  // inter-cell large-scale fading
    int L_p = 0;         // cells still contaminating the training of each cell
    double E_t = 10.0;   // training energy tau * P_t
    double rho = 10.0;   // downlink transmit SNR

    // Number of channel directions, round(c M) with ties rounded up.
    int delta() const;

    // Delta / M. Every closed form uses this value so that trace identities
    // hold exactly when c M is not an integer.
    double effective_c() const;

    // Throws ConfigError naming the first violated invariant.
    void validate() const;
};

enum class Precoder
{
    mrt,
    zf
};

std::string to_string(Precoder p);
Precoder parse_precoder(const std::string &name);

// round(c M) with ties rounded up; throws ConfigError for M < 2 or c outside (0, 1].
int direction_count(int M, double c);

} // namespace mimo_lab

#endif

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

#ifndef MIMO_LAB_RANDOM_HPP
#define MIMO_LAB_RANDOM_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace mimo_lab
{

/*!
 * Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
 *
 * Maps a 128-bit counter and 64-bit key to 128 random bits with no state, so
 * any block of any stream can be produced independently.
 */
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key);
};

// Identifies the random stream of one Monte Carlo trial.
struct SeedPath
{
    std::uint64_t master_seed = 0;
    std::string case_id;
    int M = 0;
    std::uint64_t trial_index = 0;

    bool operator==(const SeedPath &) const = default;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

/*!
 * Sequential view over the Philox blocks keyed by a seed path.
 *
 * The key is derived from (master_seed, case_id, M); the trial index occupies
 * the upper half of the counter and the block index the lower half. Two streams
 * built from equal seed paths produce identical sequences.
 */
class RngStream
{
  public:
    using result_type = std::uint64_t;

    explicit RngStream(const SeedPath &path);
    RngStream(std::uint64_t key, std::uint64_t stream_index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    // Uniform on (0, 1] with 53 random bits.
    double uniform();

    // Circularly symmetric complex Gaussian with E|z|^2 = 1 (Box-Muller).
    std::complex<double> complex_normal();

    std::uint64_t blocks_consumed() const { return block_; }

  private:
    void refill();

    Philox4x32::Key key_{};
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int used_ = 2;
};

// Fills every coefficient with an independent CN(0, 1) sample, column-major order.
template <typename Derived>
void fill_complex_normal(RngStream &rng, Eigen::DenseBase<Derived> &out)
{
    using Scalar = typename Derived::Scalar;
    using Real = typename Scalar::value_type;
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index i = 0; i < out.rows(); ++i)
        {
            const std::complex<double> z = rng.complex_normal();
            out(i, j) = Scalar(static_cast<Real>(z.real()), static_cast<Real>(z.imag()));
        }
}

} // namespace mimo_lab

#endif

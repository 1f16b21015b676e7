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

#ifndef MIMO_LAB_SCENARIO_HPP
#define MIMO_LAB_SCENARIO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mimo_lab/config.hpp"
#include "mimo_lab/scaling.hpp"

namespace mimo_lab
{

// Malformed scenario document; carries the 1-based line number.
class ParseError : public std::runtime_error
{
  public:
    ParseError(int line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

  private:
    int line_;
};

// coefficient * M^exponent, optionally floored to an integer.
struct PowerLawParam
{
    double coefficient = 1.0;
    double exponent = 0.0;
    bool floor_to_int = false;

    double evaluate(int M) const;

    bool operator==(const PowerLawParam &) const = default;
};

// L_p is either constant or tabulated per antenna count.
struct ContaminationSchedule
{
    int constant = 0;
    std::vector<std::pair<int, int>> per_M;  // (M, L_p), M increasing

    int at(int M) const;
    bool perfect() const;

    bool operator==(const ContaminationSchedule &) const = default;
};

struct ScenarioCase
{
    std::string case_id;
    PowerLawParam E_t;
    PowerLawParam rho;
    PowerLawParam K;
    ContaminationSchedule L_p;
    int L = 7;
    double c = 0.6;
    double alpha = 0.3;
    Precoder precoder = Precoder::mrt;

    // Network parameters at M; throws ConfigError naming M on an invalid point.
    NetworkConfig config_at(int M) const;

    // r_t, r_k, r_rho from the power laws; r_gamma fitted from a tabulated L_p.
    ScalingExponents exponents() const;

    void validate(const std::vector<int> &grid) const;

    bool operator==(const ScenarioCase &) const = default;
};

const std::vector<int> &default_grid();

struct Scenario
{
    std::vector<int> grid = default_grid();
    std::vector<ScenarioCase> cases;
};

/*!
 * Parses the key/value scenario format:
 *
 *     grid = 100, 200, 300
 *     [case my-case]
 *     precoder = mrt
 *     L = 7
 *     c = 0.6
 *     alpha = 0.3
 *     E_t = 10 0          # coefficient exponent [floor]
 *     rho = 1 -0.5
 *     K = 0.1 1 floor
 *     L_p = 100:5 200:4   # or a single integer
 *
 * Every case is validated over the grid.
 */
Scenario parse_scenario(std::string_view text);
std::string emit_scenario(const Scenario &scenario);

// Built-in cases: "table1" (perfect contamination elimination, 11 cases) and
// "table2" (imperfect, 5 cases). The precoder argument is applied to every case.
std::vector<ScenarioCase> preset_cases(std::string_view name, Precoder precoder = Precoder::mrt);

// Finds a case by full id or by its trailing "caseN" / "N" ("4" matches "table1-case4").
const ScenarioCase &find_case(const std::vector<ScenarioCase> &cases, std::string_view key);

} // namespace mimo_lab

#endif

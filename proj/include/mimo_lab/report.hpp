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

#ifndef MIMO_LAB_REPORT_HPP
#define MIMO_LAB_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mimo_lab/monte_carlo.hpp"
#include "mimo_lab/scaling.hpp"
#include "mimo_lab/scenario.hpp"

namespace mimo_lab
{

// Output directory or file cannot be written.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCsvHeader = "case_id,M,metric,value,stderr";

struct CsvRow
{
    std::string case_id;
    int M = 0;
    std::string metric;
    double value = 0.0;
    double stderr_value = 0.0;
};

// Shortest round-trip decimal; "nan" / "inf" for non-finite values.
std::string format_number(double v);

void write_csv(std::ostream &out, std::span<const CsvRow> rows);

// Metrics of every sweep row; invalid points produce a single "invalid" row.
std::vector<CsvRow> sweep_csv_rows(const SweepResult &sweep);

struct ApplicabilityPoint
{
    int M = 0;
    ApplicabilityVerdict verdict;
};

struct CaseSummary
{
    std::string case_id;
    Precoder precoder = Precoder::mrt;
    ScalingExponents exponents;
    double r_s_theoretical = 0.0;
    std::optional<double> r_s_fitted;   // slope of the effective SINR curve
    bool applicability = false;         // verdict holds at every grid point
    std::vector<ApplicabilityPoint> applicability_detail;
    bool deterministic = false;
    std::optional<PowerFit> scv_fit;    // SINR SCV = a / M^b
    std::string fitted_from;            // "simulation" or "analytic"
};

/*!
 * Exponents, applicability verdicts and fits of one case. With a sweep the
 * fit uses the simulated effective SINR 1/mean(1/SINR); without one it uses
 * the closed form.
 */
CaseSummary summarize_case(const ScenarioCase &scenario, const std::vector<int> &grid,
                           const SweepResult *sweep = nullptr,
                           double threshold = kDefaultDominance);

nlohmann::json to_json(const CaseSummary &summary);
nlohmann::json to_json(const ApplicabilityVerdict &verdict);
nlohmann::json to_json(const MomentCheck &check);

struct Series
{
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct PlotSpec
{
    std::string title;
    std::string x_label = "M";
    std::string y_label;
    bool log_x = false;
    bool log_y = true;
    std::vector<Series> series;
};

// Self-contained SVG line plot; non-positive values are skipped on log axes.
std::string render_svg(const PlotSpec &plot);

struct ReproduceOptions
{
    std::filesystem::path out_dir = ".";
    std::uint64_t master_seed = 1;
    long n_trials = 0;  // 0 selects the preset default (2000, or 5000 for fig3)
    int workers = 0;
    bool svg = true;
    std::vector<int> grid = default_grid();
    double threshold = kDefaultDominance;
};

struct ReproduceOutput
{
    std::vector<std::filesystem::path> files;
    std::vector<CaseSummary> summaries;
    std::vector<CsvRow> rows;
};

const std::vector<std::string> &preset_names();

/*!
 * fig1..fig7, table1, table2. Writes <name>.csv, <name>.json and, when
 * enabled, <name>.svg into out_dir. Axes: linear M, log-scaled y.
 *   fig1/fig6  effective SINR, Table I, MRT/ZF, with theoretical-slope references
 *   fig2/fig5  simulated sum rate against the analytic sum rate, Table I, MRT/ZF
 *   fig3       SINR SCV of Table I cases 1, 4, 5, 6 with fitted a / M^b
 *   fig4/fig7  effective SINR, Table II, MRT/ZF
 *   table1/2   evaluated parameters, closed forms and verdicts (no simulation)
 */
ReproduceOutput reproduce_preset(std::string_view name, const ReproduceOptions &options);

} // namespace mimo_lab

#endif

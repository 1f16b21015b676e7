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

#include "mimo_lab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace mimo_lab
{

double PowerLawParam::evaluate(int M) const
{
    if (M < 1)
        throw ConfigError("antenna count must be positive");
    double value = coefficient * std::pow(static_cast<double>(M), exponent);
    if (floor_to_int)
    {
        // Guard against pow() landing just below an exact integer.
        value = std::floor(value + 1e-9);
        if (value < 1.0)
            throw ConfigError("floored parameter evaluates below 1 at M = " + std::to_string(M));
    }
    if (!(value > 0.0) || !std::isfinite(value))
        throw ConfigError("parameter evaluates to a non-positive value at M = " +
                          std::to_string(M));
    return value;
}

int ContaminationSchedule::at(int M) const
{
    if (per_M.empty())
        return constant;
    for (const auto &[m, lp] : per_M)
        if (m == M)
            return lp;
    throw ConfigError("no L_p value tabulated for M = " + std::to_string(M));
}

bool ContaminationSchedule::perfect() const
{
    if (per_M.empty())
        return constant == 0;
    return std::all_of(per_M.begin(), per_M.end(), [](const auto &p) { return p.second == 0; });
}

NetworkConfig ScenarioCase::config_at(int M) const
{
    NetworkConfig cfg;
    cfg.L = L;
    cfg.M = M;
    cfg.c = c;
    cfg.alpha = alpha;
    try
    {
        cfg.K = static_cast<int>(K.evaluate(M));
        cfg.E_t = E_t.evaluate(M);
        cfg.rho = rho.evaluate(M);
        cfg.L_p = L_p.at(M);
        cfg.validate();
    }
    catch (const ConfigError &e)
    {
        throw ConfigError("case " + case_id + " at M = " + std::to_string(M) + ": " + e.what());
    }
    return cfg;
}

ScalingExponents ScenarioCase::exponents() const
{
    ScalingExponents s;
    s.r_t = -E_t.exponent;
    s.r_k = K.exponent;
    s.r_rho = -rho.exponent;
    s.perfect_pce = L_p.perfect();
    if (!s.perfect_pce && !L_p.per_M.empty())
    {
        std::vector<Point> points;
        for (const auto &[m, lp] : L_p.per_M)
        {
            if (lp <= 0)
                throw ConfigError("case " + case_id +
                                  ": cannot fit a contamination decay through L_p = 0");
            points.push_back({static_cast<double>(m), static_cast<double>(lp)});
        }
        s.r_gamma = points.size() >= 3 ? fit_power_decay(points).b : 0.0;
    }
    return s;
}

void ScenarioCase::validate(const std::vector<int> &grid) const
{
    if (case_id.empty())
        throw ConfigError("case id must not be empty");
    for (int M : grid)
        config_at(M);
}

const std::vector<int> &default_grid()
{
    static const std::vector<int> grid{100, 200, 300, 400, 500, 600};
    return grid;
}

namespace
{
std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
    {
        auto t = trim(item);
        if (!t.empty())
            out.push_back(t);
    }
    return out;
}

std::vector<std::string> words(const std::string &s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

double to_double(const std::string &s, int line, const std::string &field)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ParseError(line, "field '" + field + "': '" + s + "' is not a number");
    return v;
}

int to_int(const std::string &s, int line, const std::string &field)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, "field '" + field + "': '" + s + "' is not an integer");
    return v;
}

PowerLawParam parse_power_law(const std::string &value, int line, const std::string &field)
{
    const auto parts = words(value);
    if (parts.size() < 2 || parts.size() > 3)
        throw ParseError(line, "field '" + field + "' expects '<coefficient> <exponent> [floor]'");
    PowerLawParam p;
    p.coefficient = to_double(parts[0], line, field + ".coefficient");
    p.exponent = to_double(parts[1], line, field + ".exponent");
    if (parts.size() == 3)
    {
        if (parts[2] != "floor")
            throw ParseError(line, "field '" + field + "': unknown flag '" + parts[2] + "'");
        p.floor_to_int = true;
    }
    if (!(p.coefficient > 0.0))
        throw ParseError(line, "field '" + field + "': coefficient must be positive");
    return p;
}

ContaminationSchedule parse_schedule(const std::string &value, int line)
{
    ContaminationSchedule s;
    const auto parts = words(value);
    if (parts.empty())
        throw ParseError(line, "field 'L_p' is empty");
    if (parts.size() == 1 && parts[0].find(':') == std::string::npos)
    {
        s.constant = to_int(parts[0], line, "L_p");
        return s;
    }
    for (const auto &p : parts)
    {
        const auto colon = p.find(':');
        if (colon == std::string::npos)
            throw ParseError(line, "field 'L_p': expected M:value pairs, got '" + p + "'");
        const int m = to_int(p.substr(0, colon), line, "L_p");
        const int lp = to_int(p.substr(colon + 1), line, "L_p");
        if (!s.per_M.empty() && m <= s.per_M.back().first)
            throw ParseError(line, "field 'L_p': antenna counts must increase");
        s.per_M.emplace_back(m, lp);
    }
    return s;
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_power_law(const PowerLawParam &p)
{
    std::string out = format_double(p.coefficient) + " " + format_double(p.exponent);
    if (p.floor_to_int)
        out += " floor";
    return out;
}
} // namespace

Scenario parse_scenario(std::string_view text)
{
    Scenario scenario;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    ScenarioCase *current = nullptr;
    std::vector<std::string> seen;

    while (std::getline(in, raw))
    {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string entry = trim(raw);
        if (entry.empty())
            continue;

        if (entry.front() == '[')
        {
            if (entry.back() != ']')
                throw ParseError(line, "unterminated section header");
            const auto header = words(entry.substr(1, entry.size() - 2));
            if (header.size() != 2 || header[0] != "case")
                throw ParseError(line, "section header must read [case <id>]");
            scenario.cases.emplace_back();
            current = &scenario.cases.back();
            current->case_id = header[1];
            seen.clear();
            continue;
        }

        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ParseError(line, "expected 'key = value'");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (value.empty())
            throw ParseError(line, "field '" + key + "' has no value");

        if (current == nullptr)
        {
            if (key != "grid")
                throw ParseError(line, "only 'grid' may appear before the first case");
            scenario.grid.clear();
            for (const auto &m : split(value, ','))
                scenario.grid.push_back(to_int(m, line, "grid"));
            for (std::size_t i = 1; i < scenario.grid.size(); ++i)
                if (scenario.grid[i] <= scenario.grid[i - 1])
                    throw ParseError(line, "grid must be strictly increasing");
            if (scenario.grid.empty())
                throw ParseError(line, "grid is empty");
            continue;
        }

        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ParseError(line, "duplicate field '" + key + "'");
        seen.push_back(key);

        if (key == "precoder")
        {
            try
            {
                current->precoder = parse_precoder(value);
            }
            catch (const ConfigError &e)
            {
                throw ParseError(line, e.what());
            }
        }
        else if (key == "L")
            current->L = to_int(value, line, key);
        else if (key == "c")
            current->c = to_double(value, line, key);
        else if (key == "alpha")
            current->alpha = to_double(value, line, key);
        else if (key == "E_t")
            current->E_t = parse_power_law(value, line, key);
        else if (key == "rho")
            current->rho = parse_power_law(value, line, key);
        else if (key == "K")
            current->K = parse_power_law(value, line, key);
        else if (key == "L_p")
            current->L_p = parse_schedule(value, line);
        else
            throw ParseError(line, "unknown field '" + key + "'");
    }

    for (const auto &c : scenario.cases)
        c.validate(scenario.grid);
    return scenario;
}

std::string emit_scenario(const Scenario &scenario)
{
    std::ostringstream out;
    out << "grid = ";
    for (std::size_t i = 0; i < scenario.grid.size(); ++i)
        out << (i ? ", " : "") << scenario.grid[i];
    out << "\n";
    for (const auto &c : scenario.cases)
    {
        out << "\n[case " << c.case_id << "]\n";
        out << "precoder = " << to_string(c.precoder) << "\n";
        out << "L = " << c.L << "\n";
        out << "c = " << format_double(c.c) << "\n";
        out << "alpha = " << format_double(c.alpha) << "\n";
        out << "E_t = " << format_power_law(c.E_t) << "\n";
        out << "rho = " << format_power_law(c.rho) << "\n";
        out << "K = " << format_power_law(c.K) << "\n";
        out << "L_p =";
        if (c.L_p.per_M.empty())
            out << " " << c.L_p.constant;
        else
            for (const auto &[m, lp] : c.L_p.per_M)
                out << " " << m << ":" << lp;
        out << "\n";
    }
    return out.str();
}

namespace
{
PowerLawParam constant(double v) { return {v, 0.0, false}; }
PowerLawParam power(double coef, double exp, bool floor = false) { return {coef, exp, floor}; }

ScenarioCase make_case(std::string id, PowerLawParam E_t, PowerLawParam rho, PowerLawParam K,
                       ContaminationSchedule L_p, Precoder precoder)
{
    ScenarioCase c;
    c.case_id = std::move(id);
    c.E_t = E_t;
    c.rho = rho;
    c.K = K;
    c.L_p = std::move(L_p);
    c.precoder = precoder;
    return c;
}
} // namespace

std::vector<ScenarioCase> preset_cases(std::string_view name, Precoder precoder)
{
    const auto users_linear = power(0.1, 1.0, true);   // floor(M/10)
    const auto users_sqrt = power(1.0, 0.5, true);     // floor(sqrt M)
    const auto inv_sqrt = power(1.0, -0.5);            // 1/sqrt(M)
    const ContaminationSchedule none{};

    if (name == "table1")
    {
        const std::string p = "table1-case";
        return {
            make_case(p + "1", constant(10), constant(10), users_linear, none, precoder),
            make_case(p + "2", constant(10), power(1.0, -1.0), constant(10), none, precoder),
            make_case(p + "3", constant(10), inv_sqrt, users_sqrt, none, precoder),
            make_case(p + "4", constant(10), inv_sqrt, constant(10), none, precoder),
            make_case(p + "5", constant(10), constant(10), users_sqrt, none, precoder),
            make_case(p + "6", constant(10), constant(10), constant(10), none, precoder),
            make_case(p + "7", power(10.0, -1.0), constant(10), constant(10), none, precoder),
            make_case(p + "8", inv_sqrt, inv_sqrt, constant(10), none, precoder),
            make_case(p + "9", inv_sqrt, constant(10), users_sqrt, none, precoder),
            make_case(p + "10", inv_sqrt, constant(10), constant(10), none, precoder),
            make_case(p + "11", constant(10), power(20.0, -0.5), constant(10), none, precoder),
        };
    }
    if (name == "table2")
    {
        const std::string p = "table2-case";
        ContaminationSchedule decreasing;
        decreasing.per_M = {{100, 5}, {200, 5}, {300, 4}, {400, 4}, {500, 3}, {600, 3}};
        const ContaminationSchedule five{5, {}};
        return {
            make_case(p + "1", constant(0.2), inv_sqrt, users_sqrt, decreasing, precoder),
            make_case(p + "2", constant(0.2), constant(0.1), users_linear, decreasing, precoder),
            make_case(p + "3", constant(0.2), constant(10), constant(2), decreasing, precoder),
            make_case(p + "4", constant(1), constant(20), constant(2), five, precoder),
            make_case(p + "5", constant(0.2), constant(10), constant(10), five, precoder),
        };
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected table1 or table2)");
}

const ScenarioCase &find_case(const std::vector<ScenarioCase> &cases, std::string_view key)
{
    for (const auto &c : cases)
        if (c.case_id == key)
            return c;
    const std::string suffix =
        key.starts_with("case") ? std::string(key) : "case" + std::string(key);
    for (const auto &c : cases)
        if (c.case_id.size() >= suffix.size() &&
            c.case_id.compare(c.case_id.size() - suffix.size(), suffix.size(), suffix) == 0)
            return c;
    throw ConfigError("no case '" + std::string(key) + "' in the scenario");
}

} // namespace mimo_lab

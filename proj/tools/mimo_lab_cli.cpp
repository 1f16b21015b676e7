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

// mimo-lab: closed forms, scaling laws and Monte Carlo checks for multi-cell
// massive MIMO downlinks.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mimo_lab/monte_carlo.hpp"
#include "mimo_lab/report.hpp"
#include "mimo_lab/scaling.hpp"
#include "mimo_lab/scenario.hpp"

using namespace mimo_lab;
using nlohmann::json;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct NetworkFlags
{
    int L = 7;
    std::vector<int> M;
    int K = 10;
    double c = 0.6;
    double alpha = 0.3;
    int L_p = 0;
    double E_t = 10.0;
    double rho = 10.0;
    std::string precoder = "mrt";
    std::string preset;
    std::string scenario_file;
    std::string case_key;
};

struct CommonFlags
{
    std::string format = "csv";
    std::uint64_t seed = 1;
    int workers = 0;
    double threshold = kDefaultDominance;
};

void add_network_flags(CLI::App *app, NetworkFlags &f)
{
    app->add_option("--M", f.M, "antenna counts (comma separated)")->delimiter(',');
    app->add_option("--K", f.K, "users per cell");
    app->add_option("--L", f.L, "number of cells");
    app->add_option("--c", f.c, "spatial correlation level");
    app->add_option("--alpha", f.alpha, "inter-cell fading");
    app->add_option("--Lp", f.L_p, "contaminating cells");
    app->add_option("--Et", f.E_t, "training energy");
    app->add_option("--rho", f.rho, "downlink SNR");
    app->add_option("--precoder", f.precoder, "mrt or zf")->check(CLI::IsMember({"mrt", "zf"}));
    app->add_option("--preset", f.preset, "built-in cases: table1 or table2");
    app->add_option("--scenario", f.scenario_file, "scenario file");
    app->add_option("--case", f.case_key, "case id or number within the preset/scenario");
}

void add_common_flags(CLI::App *app, CommonFlags &f, bool seeded)
{
    app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (seeded)
    {
        app->add_option("--seed", f.seed, "master seed (default: MIMO_LAB_SEED or 1)");
        app->add_option("--workers", f.workers, "worker threads (0 = all cores)");
    }
    app->add_option("--threshold", f.threshold, "dominance factor for applicability");
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The case to evaluate plus the antenna grid: a preset or scenario case, or a
// constant-parameter case built from the individual flags.
struct Selection
{
    ScenarioCase scenario;
    std::vector<int> grid;
};

Selection select_case(const NetworkFlags &f)
{
    Selection sel;
    const Precoder precoder = parse_precoder(f.precoder);
    if (!f.preset.empty() || !f.scenario_file.empty())
    {
        if (!f.preset.empty() && !f.scenario_file.empty())
            throw ConfigError("--preset and --scenario are mutually exclusive");
        if (f.case_key.empty())
            throw ConfigError("--case is required with --preset or --scenario");
        if (!f.preset.empty())
        {
            const auto cases = preset_cases(f.preset, precoder);
            sel.scenario = find_case(cases, f.case_key);
            sel.grid = default_grid();
        }
        else
        {
            const auto sc = parse_scenario(read_file(f.scenario_file));
            sel.scenario = find_case(sc.cases, f.case_key);
            sel.grid = sc.grid;
        }
        if (!f.M.empty())
            sel.grid = f.M;
        return sel;
    }
    if (!f.case_key.empty())
        throw ConfigError("--case needs --preset or --scenario");
    auto &sc = sel.scenario;
    sc.case_id = "custom";
    sc.L = f.L;
    sc.c = f.c;
    sc.alpha = f.alpha;
    sc.E_t = {f.E_t, 0.0, false};
    sc.rho = {f.rho, 0.0, false};
    sc.K = {static_cast<double>(f.K), 0.0, false};
    sc.L_p = {f.L_p, {}};
    sc.precoder = precoder;
    sel.grid = f.M.empty() ? std::vector<int>{100} : f.M;
    return sel;
}

void emit_rows(const std::vector<CsvRow> &rows) { write_csv(std::cout, rows); }

// ---------------------------------------------------------------------------

int cmd_analytic(const NetworkFlags &nf, const CommonFlags &cf)
{
    const auto sel = select_case(nf);
    std::vector<CsvRow> rows;
    json points = json::array();
    for (int M : sel.grid)
    {
        const auto cfg = sel.scenario.config_at(M);
        const auto &id = sel.scenario.case_id;
        std::vector<std::pair<std::string, double>> values{
            {"Delta", static_cast<double>(cfg.delta())},
            {"K", static_cast<double>(cfg.K)},
            {"L_p", static_cast<double>(cfg.L_p)},
            {"E_t", cfg.E_t},
            {"rho", cfg.rho},
            {"Q", csi_quality(cfg).Q},
            {"P_e", pe_closed_form(cfg)},
        };
        const auto lemma = component_moments(cfg);
        values.emplace_back("mean_P_s", lemma.mean_P_s);
        values.emplace_back("scv_P_s", lemma.scv_P_s);
        if (lemma.mean_P_i_in)
        {
            values.emplace_back("mean_P_i_in", *lemma.mean_P_i_in);
            values.emplace_back("scv_P_i_in", *lemma.scv_P_i_in);
        }
        if (lemma.mean_P_i_out)
        {
            values.emplace_back("mean_P_i_out", *lemma.mean_P_i_out);
            values.emplace_back("scv_P_i_out", *lemma.scv_P_i_out);
        }
        try
        {
            values.emplace_back("effective_sinr_mrt", effective_sinr_mrt(cfg));
            values.emplace_back("rate_lower_bound", rate_lower_bound(cfg));
            values.emplace_back("sum_rate_lower_bound", sum_rate_lower_bound(cfg));
        }
        catch (const ValidityError &)
        {
            values.emplace_back("effective_sinr_mrt", NAN);
        }
        if (cfg.delta() > cfg.K)
        {
            const auto zf = zf_quantities(cfg);
            values.emplace_back("zf_lambda", zf.lambda);
            values.emplace_back("zf_p_e_bar", zf.p_e_bar);
            values.emplace_back("zf_chi_tilde", zf.chi_tilde);
            values.emplace_back("zf_sinr", zf.sinr);
        }
        json point{{"M", M}};
        for (const auto &[k, v] : values)
        {
            rows.push_back({id, M, k, v, 0.0});
            point[k] = std::isfinite(v) ? json(v) : json(nullptr);
        }
        points.push_back(point);
    }
    if (cf.format == "csv")
    {
        emit_rows(rows);
        return kExitOk;
    }
    auto j = to_json(summarize_case(sel.scenario, sel.grid, nullptr, cf.threshold));
    j["points"] = points;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_simulate(const NetworkFlags &nf, const CommonFlags &cf, long trials)
{
    const auto sel = select_case(nf);
    const auto sweep = run_case_sweep(sel.scenario, sel.grid, trials, cf.seed, cf.workers);
    for (const auto &r : sweep.rows)
        if (!r.error.empty())
            std::cerr << "warning: M = " << r.M << ": " << r.error << "\n";
    if (cf.format == "csv")
    {
        emit_rows(sweep_csv_rows(sweep));
        return kExitOk;
    }
    auto j = to_json(summarize_case(sel.scenario, sel.grid, &sweep, cf.threshold));
    j["seed"] = cf.seed;
    j["n_trials"] = trials;
    json rows = json::array();
    for (const auto &r : sweep_csv_rows(sweep))
        rows.push_back({{"M", r.M},
                        {"metric", r.metric},
                        {"value", std::isfinite(r.value) ? json(r.value) : json(nullptr)},
                        {"stderr", std::isfinite(r.stderr_value) ? json(r.stderr_value) : json(nullptr)}});
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_scaling(double rt, double rk, double rrho, double rgamma, const std::string &pce,
                const CommonFlags &cf)
{
    ScalingExponents s{rt, rk, rrho, rgamma, pce == "perfect"};
    s.validate();
    const double rs = scaling_exponent(s);
    const bool det = deterministic_check(s);
    const bool nd = non_decreasing_check(s);
    if (cf.format == "csv")
    {
        emit_rows({{"custom", 0, "r_s", rs, 0.0},
                   {"custom", 0, "non_decreasing", nd ? 1.0 : 0.0, 0.0},
                   {"custom", 0, "deterministic", det ? 1.0 : 0.0, 0.0}});
        return kExitOk;
    }
    json j{{"case_id", "custom"},
           {"r_s_theoretical", rs},
           {"r_s_fitted", nullptr},
           {"applicability", nullptr},
           {"deterministic", det},
           {"non_decreasing", nd}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_check_applicability(const NetworkFlags &nf, const CommonFlags &cf)
{
    const auto sel = select_case(nf);
    const auto exps = sel.scenario.exponents();
    std::vector<CsvRow> rows;
    json detail = json::array();
    bool all = true;
    for (int M : sel.grid)
    {
        const auto cfg = sel.scenario.config_at(M);
        const auto v = sel.scenario.precoder == Precoder::mrt ? mrt_applicability(cfg, exps, cf.threshold)
                                                              : zf_applicability(cfg, exps, cf.threshold);
        all = all && v.applicable;
        rows.push_back({sel.scenario.case_id, M, "applicable", v.applicable ? 1.0 : 0.0, 0.0});
        rows.push_back({sel.scenario.case_id, M, "margin", v.margin, 0.0});
        for (const auto &[k, val] : v.diagnostics)
            rows.push_back({sel.scenario.case_id, M, k, val, 0.0});
        auto jv = to_json(v);
        jv["M"] = M;
        detail.push_back(jv);
    }
    if (cf.format == "csv")
    {
        emit_rows(rows);
        return kExitOk;
    }
    json j{{"case_id", sel.scenario.case_id},
           {"r_s_theoretical", scaling_exponent(exps)},
           {"r_s_fitted", nullptr},
           {"applicability", all},
           {"deterministic", deterministic_check(exps)},
           {"precoder", to_string(sel.scenario.precoder)},
           {"applicability_detail", detail}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify_moments(const NetworkFlags &nf, const CommonFlags &cf, long trials)
{
    NetworkConfig cfg;
    cfg.L = nf.L;
    cfg.M = nf.M.empty() ? 64 : nf.M.front();
    if (nf.M.size() > 1)
        throw ConfigError("verify-moments takes a single --M");
    cfg.K = nf.K;
    cfg.c = nf.c;
    cfg.alpha = nf.alpha;
    cfg.L_p = nf.L_p;
    cfg.E_t = nf.E_t;
    cfg.rho = nf.rho;
    const auto check = verify_moments(cfg, trials, cf.seed, cf.workers);
    if (cf.format == "csv")
    {
        std::vector<CsvRow> rows;
        const std::string id = "verify-moments";
        for (const auto &r : check.rows)
        {
            rows.push_back({id, cfg.M, r.name + ":analytic", r.analytic, 0.0});
            rows.push_back({id, cfg.M, r.name + ":empirical", r.empirical, r.se});
            rows.push_back({id, cfg.M, r.name + ":z", r.z, 0.0});
        }
        emit_rows(rows);
    }
    else
    {
        auto j = to_json(check);
        j["seed"] = cf.seed;
        std::cout << j.dump(2) << "\n";
    }
    if (!check.passed)
    {
        std::cerr << "moment verification failed: some |z| > " << kMomentZLimit << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_fit(const std::string &input, const std::vector<std::string> &points_arg,
            const std::string &metric, const std::string &model, const CommonFlags &cf)
{
    // case_id -> points
    std::map<std::string, std::vector<Point>> groups;
    auto parse_double = [](const std::string &s) {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw ConfigError("not a number: '" + s + "'");
        return v;
    };
    try
    {
        if (!points_arg.empty())
        {
            for (const auto &p : points_arg)
            {
                const auto colon = p.find(':');
                if (colon == std::string::npos)
                    throw ConfigError("points are written M:value, got '" + p + "'");
                groups["custom"].push_back({parse_double(p.substr(0, colon)), parse_double(p.substr(colon + 1))});
            }
        }
        else
        {
            std::istringstream in(input == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                               : read_file(input));
            std::string line;
            if (!std::getline(in, line) || line != kCsvHeader)
                throw ConfigError("input is not a mimo-lab CSV (header mismatch)");
            while (std::getline(in, line))
            {
                if (line.empty())
                    continue;
                std::vector<std::string> cols;
                std::stringstream ls(line);
                std::string col;
                while (std::getline(ls, col, ','))
                    cols.push_back(col);
                if (cols.size() != 5)
                    throw ConfigError("malformed CSV line: " + line);
                if (cols[2] != metric)
                    continue;
                const double v = parse_double(cols[3]);
                if (std::isfinite(v))
                    groups[cols[0]].push_back({parse_double(cols[1]), v});
            }
        }
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(std::string("cannot parse fit input: ") + e.what());
    }
    if (groups.empty())
        throw ConfigError("no points for metric '" + metric + "'");

    std::vector<CsvRow> rows;
    json out = json::array();
    for (auto &[id, pts] : groups)
    {
        std::sort(pts.begin(), pts.end(), [](const Point &a, const Point &b) { return a.M < b.M; });
        json j{{"case_id", id}, {"n_points", pts.size()}};
        if (model == "exponent")
        {
            const double r = estimate_exponent(pts);
            rows.push_back({id, 0, "exponent", r, 0.0});
            j["r_s_fitted"] = r;
        }
        else
        {
            const auto fit = fit_power_decay(pts);
            rows.push_back({id, 0, "a", fit.a, 0.0});
            rows.push_back({id, 0, "b", fit.b, 0.0});
            j["a"] = fit.a;
            j["b"] = fit.b;
        }
        out.push_back(j);
    }
    if (cf.format == "csv")
        emit_rows(rows);
    else
        std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_reproduce(const std::vector<std::string> &names, const std::string &out_dir, long trials,
                  bool no_svg, const std::vector<int> &grid, const CommonFlags &cf)
{
    std::vector<std::string> list = names;
    if (list.size() == 1 && list[0] == "all")
        list = preset_names();
    ReproduceOptions opt;
    opt.out_dir = out_dir;
    opt.master_seed = cf.seed;
    opt.n_trials = trials;
    opt.workers = cf.workers;
    opt.svg = !no_svg;
    opt.threshold = cf.threshold;
    if (!grid.empty())
        opt.grid = grid;
    json all = json::array();
    for (const auto &name : list)
    {
        const auto result = reproduce_preset(name, opt);
        for (const auto &f : result.files)
            std::cerr << "wrote " << f.string() << "\n";
        if (cf.format == "json")
            for (const auto &s : result.summaries)
            {
                auto j = to_json(s);
                j["preset"] = name;
                all.push_back(j);
            }
        else
            emit_rows(result.rows);
    }
    if (cf.format == "json")
        std::cout << all.dump(2) << "\n";
    return kExitOk;
}

std::uint64_t default_seed()
{
    const char *env = std::getenv("MIMO_LAB_SEED");
    if (env == nullptr || *env == '\0')
        return 1;
    const std::string text(env);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("MIMO_LAB_SEED must be a non-negative integer, got '" + text + "'");
    return v;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mimo-lab: scaling laws and Monte Carlo checks for multi-cell massive MIMO"};
    app.require_subcommand(1);

    NetworkFlags nf;
    CommonFlags cf;
    long trials = 2000;

    try
    {
        cf.seed = default_seed();
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    auto *analytic = app.add_subcommand("analytic", "closed-form quantities over M");
    add_network_flags(analytic, nf);
    add_common_flags(analytic, cf, false);

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo sweep over M");
    add_network_flags(simulate, nf);
    add_common_flags(simulate, cf, true);
    simulate->add_option("--trials", trials, "trials per antenna count")->check(CLI::Range(100L, 100000000L));

    double rt = 0, rk = 0, rrho = 0, rgamma = 0;
    std::string pce = "perfect";
    auto *scaling = app.add_subcommand("scaling", "scaling exponent calculus");
    scaling->add_option("--rt", rt, "training energy exponent");
    scaling->add_option("--rk", rk, "user count exponent");
    scaling->add_option("--rrho", rrho, "transmit SNR exponent");
    scaling->add_option("--rgamma", rgamma, "contamination decay exponent");
    scaling->add_option("--pce", pce, "perfect or imperfect")->check(CLI::IsMember({"perfect", "imperfect"}));
    add_common_flags(scaling, cf, false);

    auto *applic = app.add_subcommand("check-applicability", "finite-M accuracy of the scaling law");
    add_network_flags(applic, nf);
    add_common_flags(applic, cf, false);

    long verify_trials = 10000;
    auto *verify = app.add_subcommand("verify-moments", "closed-form moments against Monte Carlo");
    add_network_flags(verify, nf);
    add_common_flags(verify, cf, true);
    verify->add_option("--trials", verify_trials, "trials")->check(CLI::Range(100L, 100000000L));

    std::string input;
    std::vector<std::string> points;
    std::string metric = "effective_sinr_sim";
    std::string model = "exponent";
    auto *fit = app.add_subcommand("fit", "log-log fits of CSV data");
    fit->add_option("--input", input, "CSV file produced by simulate ('-' for stdin)");
    fit->add_option("--points", points, "M:value pairs")->delimiter(',');
    fit->add_option("--metric", metric, "metric column to fit");
    fit->add_option("--model", model, "exponent (slope) or decay (a / M^b)")
        ->check(CLI::IsMember({"exponent", "decay"}));
    add_common_flags(fit, cf, false);

    std::vector<std::string> presets;
    std::string out_dir = "results";
    bool no_svg = false;
    std::vector<int> grid;
    long repro_trials = 0;
    auto *reproduce = app.add_subcommand("reproduce", "regenerate figure and table data");
    reproduce->add_option("--preset", presets, "fig1..fig7, table1, table2 or all")
        ->required()
        ->delimiter(',');
    reproduce->add_option("--out", out_dir, "output directory");
    reproduce->add_option("--trials", repro_trials, "trials per point (default per preset)");
    reproduce->add_flag("--no-svg", no_svg, "skip SVG plots");
    reproduce->add_option("--grid", grid, "antenna counts")->delimiter(',');
    add_common_flags(reproduce, cf, true);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitValidation;
    }

    try
    {
        if (*analytic)
            return cmd_analytic(nf, cf);
        if (*simulate)
            return cmd_simulate(nf, cf, trials);
        if (*scaling)
            return cmd_scaling(rt, rk, rrho, rgamma, pce, cf);
        if (*applic)
            return cmd_check_applicability(nf, cf);
        if (*verify)
            return cmd_verify_moments(nf, cf, verify_trials);
        if (*fit)
        {
            if (input.empty() == points.empty())
                throw ConfigError("fit needs exactly one of --input or --points");
            return cmd_fit(input, points, metric, model, cf);
        }
        if (*reproduce)
        {
            for (const auto &p : presets)
                if (p != "all" && std::find(preset_names().begin(), preset_names().end(), p) ==
                                      preset_names().end())
                    throw ConfigError("unknown preset '" + p + "'");
            return cmd_reproduce(presets, out_dir, repro_trials, no_svg, grid, cf);
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    catch (const ParseError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    catch (const std::domain_error &e)  // DomainError, ValidityError
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    catch (const std::exception &e)
    {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

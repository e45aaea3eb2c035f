// SPDX-License-Identifier: Apache-2.0
//
// ris-mcrb: mutual-coupling-aware RIS channel estimation bounds
// Copyright (C) 2026 ris-mcrb contributors
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

// ris-mcrb command line: impedance and bound sweeps written as CSV.
//
// Exit codes: 0 success, 2 config/validation error, 3 numerical failure,
// 4 I/O failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ris_mcrb/errors.hpp"
#include "ris_mcrb/experiments.hpp"

namespace
{
    using namespace ris_mcrb;

    constexpr int exit_config = 2;
    constexpr int exit_numerical = 3;
    constexpr int exit_io = 4;

    struct CommonOptions
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::string out;
        std::string meta;
        bool no_cache = false;
    };

    void add_common(CLI::App *cmd, CommonOptions &o, bool with_trials)
    {
        cmd->add_option("--config", o.config, "Scenario config file (flat YAML key: value)");
        cmd->add_option("--seed", o.seed, "Override the scenario seed");
        if (with_trials)
            cmd->add_option("--trials", o.trials, "Monte-Carlo trials per power point");
        cmd->add_option("--out", o.out, "Output CSV (stdout when omitted)");
        cmd->add_option("--meta", o.meta, "Write run metadata JSON to this file");
        cmd->add_flag("--no-cache", o.no_cache, "Integrate every impedance pair without memoization");
    }

    Scenario scenario_from(const CommonOptions &o)
    {
        Scenario sc = o.config.empty() ? make_scenario(ScenarioConfig{}) : load_scenario_file(o.config);
        if (o.seed)
        {
            ScenarioConfig cfg = sc.config;
            cfg.seed = *o.seed;
            sc = make_scenario(cfg);
        }
        return sc;
    }

    std::vector<GridSize> parse_sizes(const std::vector<std::string> &specs)
    {
        std::vector<GridSize> out;
        for (const auto &s : specs)
        {
            const auto x = s.find_first_of("xX");
            try
            {
                if (x == std::string::npos)
                    throw std::invalid_argument(s);
                std::size_t used1 = 0, used2 = 0;
                const auto a = std::stoul(s.substr(0, x), &used1);
                const auto b = std::stoul(s.substr(x + 1), &used2);
                if (used1 != x || used2 != s.size() - x - 1)
                    throw std::invalid_argument(s);
                out.push_back({a, b});
            }
            catch (const std::logic_error &)
            {
                throw InvalidArgument("RIS size '" + s + "' is not of the form N1xN2");
            }
        }
        return out;
    }

    void write_output(const std::string &path, const std::string &text)
    {
        if (path.empty() || path == "-")
        {
            std::fwrite(text.data(), 1, text.size(), stdout);
            return;
        }
        write_text_file(path, text);
    }

    void dump_models(const SweepRequest &req, const std::string &prefix)
    {
        const GridSize size = req.sizes.empty() ? GridSize{req.scenario.ris.n1, req.scenario.ris.n2} : req.sizes[0];
        ImpedanceCache cache;
        for (std::size_t i = 0; i < req.spacing_grid.size(); ++i)
        {
            const Scenario sc = with_ris_grid(req.scenario, size.n1, size.n2, req.spacing_grid[i]);
            const auto models = build_models(sc, req.quadrature, &cache);
            write_text_file(fmt::format("{}_d{}_true.csv", prefix, i), model_to_csv(models.B_true));
            write_text_file(fmt::format("{}_d{}_est.csv", prefix, i), model_to_csv(models.B_est));
        }
    }

    int run(int argc, char **argv)
    {
        CLI::App app{"Mutual-coupling impact on RIS channel estimation: impedance and bound sweeps"};
        app.set_version_flag("--version", std::string(version_string()));
        app.require_subcommand(1);

        const std::vector<double> fig_spacings{0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.5};
        const std::vector<double> default_powers{-10, 0, 10, 20, 30, 40, 50, 60, 70, 80};

        // impedance-sweep
        CommonOptions imp_opts;
        std::vector<double> distances{0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.5};
        auto *imp = app.add_subcommand("impedance-sweep", "|Z_qp| of two side-by-side dipoles versus distance");
        add_common(imp, imp_opts, false);
        imp->add_option("--distances-over-lambda", distances, "Comma-separated distances in wavelengths")
            ->delimiter(',');

        // lb-vs-power
        CommonOptions lb_opts;
        std::vector<double> lb_powers = default_powers;
        std::vector<double> lb_spacings{0.02, 0.1, 0.5};
        bool lb_matched = false;
        std::string lb_dump;
        auto *lb = app.add_subcommand("lb-vs-power", "LB, CRLB (and optional RMSE) versus transmit power");
        add_common(lb, lb_opts, true);
        lb->add_option("--powers-dbm", lb_powers, "Comma-separated transmit powers in dBm")->delimiter(',');
        lb->add_option("--spacings-over-lambda", lb_spacings, "Comma-separated RIS spacings in wavelengths")
            ->delimiter(',');
        lb->add_flag("--matched", lb_matched, "Estimate with the coupling-aware model");
        lb->add_option("--dump-model", lb_dump, "Write B (true and estimation) per spacing to <prefix>_d<i>_*.csv");

        // bias-vs-spacing
        CommonOptions bias_opts;
        std::vector<double> bias_spacings = fig_spacings;
        std::vector<std::string> bias_sizes{"4x4", "8x8", "12x12"};
        auto *bias = app.add_subcommand("bias-vs-spacing", "sqrt(Tr(Bias)) versus RIS spacing and size");
        add_common(bias, bias_opts, false);
        bias->add_option("--spacings-over-lambda", bias_spacings, "Comma-separated RIS spacings in wavelengths")
            ->delimiter(',');
        bias->add_option("--sizes", bias_sizes, "Comma-separated RIS sizes, e.g. 4x4,8x8")->delimiter(',');

        // crlb-vs-spacing
        CommonOptions crlb_opts;
        std::vector<double> crlb_spacings = fig_spacings;
        std::vector<std::string> crlb_sizes{"4x4", "8x8", "12x12"};
        double crlb_power = 40.0;
        auto *crlb_cmd = app.add_subcommand("crlb-vs-spacing", "Coupling-aware CRLB versus RIS spacing and size");
        add_common(crlb_cmd, crlb_opts, false);
        crlb_cmd->add_option("--spacings-over-lambda", crlb_spacings, "Comma-separated RIS spacings in wavelengths")
            ->delimiter(',');
        crlb_cmd->add_option("--sizes", crlb_sizes, "Comma-separated RIS sizes, e.g. 4x4,8x8")->delimiter(',');
        crlb_cmd->add_option("--power-dbm", crlb_power, "Transmit power in dBm");

        // mc-rmse
        CommonOptions mc_opts;
        std::vector<double> mc_powers = default_powers;
        std::vector<double> mc_spacings{0.02};
        bool mc_matched = false;
        bool mc_noiseless = false;
        std::string mc_dump;
        auto *mc = app.add_subcommand("mc-rmse", "Monte-Carlo RMSE of the ML estimator alongside LB");
        add_common(mc, mc_opts, true);
        mc->add_option("--powers-dbm", mc_powers, "Comma-separated transmit powers in dBm")->delimiter(',');
        mc->add_option("--spacings-over-lambda", mc_spacings, "Comma-separated RIS spacings in wavelengths")
            ->delimiter(',');
        mc->add_flag("--matched", mc_matched, "Estimate with the coupling-aware model");
        mc->add_flag("--noiseless", mc_noiseless, "Suppress observation noise");
        mc->add_option("--dump-model", mc_dump, "Write B (true and estimation) per spacing to <prefix>_d<i>_*.csv");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e);
            return code == 0 ? 0 : exit_config;
        }

        auto finish = [](const CommonOptions &o, const SweepResult &result)
        {
            write_output(o.out, to_csv(result));
            if (!o.meta.empty())
                write_text_file(o.meta, metadata_json(result));
        };

        auto make_request = [](SweepKind kind, const CommonOptions &o)
        {
            SweepRequest req;
            req.kind = kind;
            req.scenario = scenario_from(o);
            req.use_cache = !o.no_cache;
            req.trials = o.trials.value_or(0);
            return req;
        };

        if (*imp)
        {
            const Scenario sc = scenario_from(imp_opts);
            write_output(imp_opts.out, impedance_sweep_csv(run_impedance_sweep(sc, distances)));
        }
        else if (*lb)
        {
            auto req = make_request(SweepKind::lb_vs_power, lb_opts);
            req.power_grid_dbm = lb_powers;
            req.spacing_grid = lb_spacings;
            req.matched = lb_matched;
            if (!lb_dump.empty())
                dump_models(req, lb_dump);
            finish(lb_opts, run_lb_vs_power(req));
        }
        else if (*bias)
        {
            auto req = make_request(SweepKind::bias_vs_spacing, bias_opts);
            req.spacing_grid = bias_spacings;
            req.sizes = parse_sizes(bias_sizes);
            finish(bias_opts, run_bias_vs_spacing(req));
        }
        else if (*crlb_cmd)
        {
            auto req = make_request(SweepKind::crlb_vs_spacing, crlb_opts);
            req.spacing_grid = crlb_spacings;
            req.sizes = parse_sizes(crlb_sizes);
            req.power_grid_dbm = {crlb_power};
            finish(crlb_opts, run_crlb_vs_spacing(req));
        }
        else if (*mc)
        {
            auto req = make_request(SweepKind::mc_rmse, mc_opts);
            req.trials = mc_opts.trials.value_or(500);
            req.power_grid_dbm = mc_powers;
            req.spacing_grid = mc_spacings;
            req.matched = mc_matched;
            req.noiseless = mc_noiseless;
            if (!mc_dump.empty())
                dump_models(req, mc_dump);
            finish(mc_opts, run_mc_rmse(req));
        }
        return 0;
    }
}

int main(int argc, char **argv)
{
    try
    {
        return run(argc, argv);
    }
    catch (const ris_mcrb::FileError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const ris_mcrb::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (const ris_mcrb::Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
}

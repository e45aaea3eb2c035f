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

#include "ris_mcrb/experiments.hpp"

#include <chrono>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "ris_mcrb/channel.hpp"
#include "ris_mcrb/errors.hpp"
#include "ris_mcrb/noise.hpp"

#ifndef RIS_MCRB_VERSION
#define RIS_MCRB_VERSION "0.0.0"
#endif

namespace ris_mcrb
{
    namespace
    {
        void require_increasing(const std::vector<double> &grid, const char *name)
        {
            if (grid.empty())
                throw InvalidArgument(fmt::format("{} must not be empty", name));
            for (std::size_t i = 0; i < grid.size(); ++i)
            {
                if (!std::isfinite(grid[i]))
                    throw InvalidArgument(fmt::format("{} contains a non-finite value", name));
                if (i > 0 && !(grid[i] > grid[i - 1]))
                    throw InvalidArgument(fmt::format("{} must be strictly increasing", name));
            }
        }

        GridSize single_size(const SweepRequest &req)
        {
            if (req.sizes.size() > 1)
                throw InvalidArgument("power sweeps take at most one RIS size");
            if (req.sizes.empty())
                return {req.scenario.ris.n1, req.scenario.ris.n2};
            return req.sizes.front();
        }

        std::vector<GridSize> sizes_or_default(const SweepRequest &req)
        {
            if (req.sizes.empty())
                return {{req.scenario.ris.n1, req.scenario.ris.n2}};
            return req.sizes;
        }

        MismatchAnalysis analysis_for(ModelPair &&models, bool matched)
        {
            if (matched)
                return MismatchAnalysis(models.D_true, models.D_true, std::move(models.x_true));
            return MismatchAnalysis(std::move(models.D_est), std::move(models.D_true), std::move(models.x_true));
        }

        // Power sweep shared by lb-vs-power and mc-rmse.
        SweepResult power_sweep(const SweepRequest &req, bool with_rmse)
        {
            const auto size = single_size(req);
            ImpedanceCache cache;
            const SeedTree seeds(req.scenario.rng_seed);
            const double sigma2 = noise_variance(req.scenario.noise);

            SweepResult result;
            result.kind = req.kind;
            result.has_rmse = with_rmse;
            for (double d : req.spacing_grid)
            {
                const Scenario sc = with_ris_grid(req.scenario, size.n1, size.n2, d);
                const auto analysis =
                    analysis_for(build_models(sc, req.quadrature, req.use_cache ? &cache : nullptr), req.matched);
                for (double p_dbm : req.power_grid_dbm)
                {
                    const double p_t = dbm_to_watts(p_dbm);
                    SweepRow row{p_dbm, d, size.n1, size.n2, analysis.report(p_t, sigma2)};
                    if (with_rmse)
                        row.report.rmse = analysis.mc_rmse(p_t, sigma2, req.trials, seeds,
                                                           noise_stream_prefix(p_dbm), req.noiseless);
                    result.rows.push_back(row);
                }
            }
            return result;
        }

        template <typename Fn>
        SweepResult timed(const SweepRequest &req, Fn &&fn)
        {
            req.validate();
            const auto start = std::chrono::steady_clock::now();
            SweepResult result = fn();
            const auto stop = std::chrono::steady_clock::now();
            result.metadata.scenario_echo = serialize_scenario(req.scenario.config);
            result.metadata.seed = req.scenario.rng_seed;
            result.metadata.code_version = version_string();
            result.metadata.wall_clock_seconds = std::chrono::duration<double>(stop - start).count();
            return result;
        }

        std::string num(double v) { return format_double(v); }
    }

    const char *version_string() { return RIS_MCRB_VERSION; }

    std::string format_double(double value) { return fmt::format("{:.17g}", value); }

    std::string to_string(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::lb_vs_power:
            return "lb-vs-power";
        case SweepKind::bias_vs_spacing:
            return "bias-vs-spacing";
        case SweepKind::crlb_vs_spacing:
            return "crlb-vs-spacing";
        case SweepKind::mc_rmse:
            return "mc-rmse";
        }
        return "unknown";
    }

    void SweepRequest::validate() const
    {
        switch (kind)
        {
        case SweepKind::lb_vs_power:
        case SweepKind::mc_rmse:
            require_increasing(power_grid_dbm, "power grid");
            require_increasing(spacing_grid, "spacing grid");
            break;
        case SweepKind::bias_vs_spacing:
        case SweepKind::crlb_vs_spacing:
            require_increasing(spacing_grid, "spacing grid");
            break;
        }
        for (double d : spacing_grid)
            if (!(d > 0.0))
                throw InvalidArgument("spacings must be positive");
        for (const auto &s : sizes)
            if (s.n1 == 0 || s.n2 == 0)
                throw InvalidArgument("RIS sizes must be at least 1x1");
        if (kind == SweepKind::mc_rmse && trials == 0)
            throw InvalidArgument("mc-rmse needs at least one trial");
        quadrature.validate();
    }

    ModelPair build_models(const Scenario &scenario, const QuadratureSpec &quad, ImpedanceCache *cache)
    {
        ModelPair m;
        m.impedances = compute_impedances(scenario, quad, cache);
        m.loads = sample_loads(scenario);
        m.B_true = build_B(m.impedances.z_rs, m.impedances.zss_self, m.impedances.zss_mutual, m.loads);
        m.B_est = build_B_uncoupled(m.impedances.z_rs, m.impedances.zss_self, m.loads);
        m.D_true = realify(m.B_true, true);
        m.D_est = realify(m.B_est, false);
        m.x_true = ChannelVector::from_complex(m.impedances.z_st);
        return m;
    }

    SweepResult run_lb_vs_power(const SweepRequest &request)
    {
        if (request.kind != SweepKind::lb_vs_power)
            throw InvalidArgument("run_lb_vs_power needs an lb-vs-power request");
        return timed(request, [&] { return power_sweep(request, request.trials > 0); });
    }

    SweepResult run_mc_rmse(const SweepRequest &request)
    {
        if (request.kind != SweepKind::mc_rmse)
            throw InvalidArgument("run_mc_rmse needs an mc-rmse request");
        return timed(request, [&] { return power_sweep(request, true); });
    }

    SweepResult run_bias_vs_spacing(const SweepRequest &request)
    {
        if (request.kind != SweepKind::bias_vs_spacing)
            throw InvalidArgument("run_bias_vs_spacing needs a bias-vs-spacing request");
        return timed(request, [&]
        {
            ImpedanceCache cache;
            SweepResult result;
            result.kind = request.kind;
            for (const auto &size : sizes_or_default(request))
                for (double d : request.spacing_grid)
                {
                    const Scenario sc = with_ris_grid(request.scenario, size.n1, size.n2, d);
                    const auto analysis = analysis_for(
                        build_models(sc, request.quadrature, request.use_cache ? &cache : nullptr), false);
                    SweepRow row{0.0, d, size.n1, size.n2, {}};
                    row.report.tr_bias = analysis.bias_trace();
                    result.rows.push_back(row);
                }
            return result;
        });
    }

    SweepResult run_crlb_vs_spacing(const SweepRequest &request)
    {
        if (request.kind != SweepKind::crlb_vs_spacing)
            throw InvalidArgument("run_crlb_vs_spacing needs a crlb-vs-spacing request");
        return timed(request, [&]
        {
            const double p_dbm = request.power_grid_dbm.empty() ? 40.0 : request.power_grid_dbm.front();
            const double p_t = dbm_to_watts(p_dbm);
            const double sigma2 = noise_variance(request.scenario.noise);
            ImpedanceCache cache;
            SweepResult result;
            result.kind = request.kind;
            for (const auto &size : sizes_or_default(request))
                for (double d : request.spacing_grid)
                {
                    const Scenario sc = with_ris_grid(request.scenario, size.n1, size.n2, d);
                    const auto analysis = analysis_for(
                        build_models(sc, request.quadrature, request.use_cache ? &cache : nullptr), true);
                    result.rows.push_back({p_dbm, d, size.n1, size.n2, analysis.report(p_t, sigma2)});
                }
            return result;
        });
    }

    SweepResult run_sweep(const SweepRequest &request)
    {
        switch (request.kind)
        {
        case SweepKind::lb_vs_power:
            return run_lb_vs_power(request);
        case SweepKind::bias_vs_spacing:
            return run_bias_vs_spacing(request);
        case SweepKind::crlb_vs_spacing:
            return run_crlb_vs_spacing(request);
        case SweepKind::mc_rmse:
            return run_mc_rmse(request);
        }
        throw InvalidArgument("unknown sweep kind");
    }

    std::string to_csv(const SweepResult &result)
    {
        std::string out;
        switch (result.kind)
        {
        case SweepKind::lb_vs_power:
        case SweepKind::mc_rmse:
            out = result.has_rmse ? "p_t_dbm,d_over_lambda,tr_mcrb,tr_bias,lb,crlb,rmse\n"
                                  : "p_t_dbm,d_over_lambda,tr_mcrb,tr_bias,lb,crlb\n";
            for (const auto &r : result.rows)
            {
                out += fmt::format("{},{},{},{},{},{}", num(r.p_t_dbm), num(r.d_over_lambda), num(r.report.tr_mcrb),
                                   num(r.report.tr_bias), num(r.report.lb), num(r.report.crlb));
                if (result.has_rmse)
                    out += "," + num(r.report.rmse.value_or(std::nan("")));
                out += '\n';
            }
            break;
        case SweepKind::bias_vs_spacing:
            out = "d_over_lambda,n1,n2,sqrt_tr_bias\n";
            for (const auto &r : result.rows)
                out += fmt::format("{},{},{},{}\n", num(r.d_over_lambda), r.n1, r.n2, num(std::sqrt(r.report.tr_bias)));
            break;
        case SweepKind::crlb_vs_spacing:
            out = "d_over_lambda,n1,n2,crlb\n";
            for (const auto &r : result.rows)
                out += fmt::format("{},{},{},{}\n", num(r.d_over_lambda), r.n1, r.n2, num(r.report.crlb));
            break;
        }
        return out;
    }

    void write_text_file(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw FileError(path.string(), "cannot open for writing");
        out << text;
        out.flush();
        if (!out)
            throw FileError(path.string(), "write failed");
    }

    void emit_csv(const SweepResult &result, const std::filesystem::path &path)
    {
        write_text_file(path, to_csv(result));
    }

    std::string metadata_json(const SweepResult &result)
    {
        nlohmann::json j;
        j["kind"] = to_string(result.kind);
        j["seed"] = result.metadata.seed;
        j["code_version"] = result.metadata.code_version;
        j["wall_clock_seconds"] = result.metadata.wall_clock_seconds;
        j["scenario"] = result.metadata.scenario_echo;
        j["rows"] = result.rows.size();
        return j.dump(2) + "\n";
    }

    std::vector<ImpedanceSweepRow> run_impedance_sweep(const Scenario &scenario,
                                                       const std::vector<double> &distances_over_lambda,
                                                       const QuadratureSpec &quad)
    {
        std::vector<ImpedanceSweepRow> rows;
        rows.reserve(distances_over_lambda.size());
        const double lambda = scenario.constants.wavelength;
        const Radiator p{Vec3::Zero(), scenario.element_half_length, scenario.element_wire_radius};
        for (double d : distances_over_lambda)
        {
            if (!(d > 0.0) || !std::isfinite(d))
                throw InvalidArgument("impedance sweep distances must be positive");
            const Radiator q{Vec3(d * lambda, 0.0, 0.0), scenario.element_half_length,
                             scenario.element_wire_radius};
            rows.push_back({d, mutual_impedance(p, q, scenario.constants, quad)});
        }
        return rows;
    }

    std::string impedance_sweep_csv(const std::vector<ImpedanceSweepRow> &rows)
    {
        std::string out = "d_over_lambda,re_z_ohm,im_z_ohm,abs_z_ohm\n";
        for (const auto &r : rows)
            out += fmt::format("{},{},{},{}\n", num(r.d_over_lambda), num(r.z.value.real()), num(r.z.value.imag()),
                               num(std::abs(r.z.value)));
        return out;
    }
}

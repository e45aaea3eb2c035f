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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ris_mcrb/bounds.hpp"
#include "ris_mcrb/impedance.hpp"
#include "ris_mcrb/scenario.hpp"

namespace ris_mcrb
{
    enum class SweepKind
    {
        lb_vs_power,
        bias_vs_spacing,
        crlb_vs_spacing,
        mc_rmse,
    };

    std::string to_string(SweepKind kind);

    struct GridSize
    {
        std::size_t n1;
        std::size_t n2;
    };

    struct SweepRequest
    {
        SweepKind kind = SweepKind::lb_vs_power;
        std::vector<double> power_grid_dbm;
        std::vector<double> spacing_grid;  // multiples of lambda
        std::vector<GridSize> sizes;       // empty: the scenario's grid
        std::size_t trials = 0;
        bool matched = false;              // estimate with the true model
        bool noiseless = false;            // Monte-Carlo without observation noise
        bool use_cache = true;
        QuadratureSpec quadrature;
        Scenario scenario;

        /// Throws InvalidArgument: grids must be non-empty and strictly increasing,
        /// and mc_rmse needs trials >= 1.
        void validate() const;
    };

    struct SweepRow
    {
        double p_t_dbm = 0.0;
        double d_over_lambda = 0.0;
        std::size_t n1 = 0;
        std::size_t n2 = 0;
        BoundReport report;
    };

    struct SweepMetadata
    {
        std::string scenario_echo;
        std::uint64_t seed = 0;
        std::string code_version;
        double wall_clock_seconds = 0.0;
    };

    struct SweepResult
    {
        SweepKind kind = SweepKind::lb_vs_power;
        bool has_rmse = false;
        std::vector<SweepRow> rows;
        SweepMetadata metadata;
    };

    /// Both models for one (size, spacing) point, loads drawn from the "loads" substream.
    struct ModelPair
    {
        ImpedanceSet impedances;
        RisLoadSequence loads;
        CMatrix B_true;
        CMatrix B_est;
        RealifiedModel D_true;
        RealifiedModel D_est;
        ChannelVector x_true;
    };

    ModelPair build_models(const Scenario &scenario, const QuadratureSpec &quad = {},
                           ImpedanceCache *cache = nullptr);

    /// Spacing-major rows: for each spacing, every power point.
    SweepResult run_lb_vs_power(const SweepRequest &request);
    /// Size-major rows: for each size, every spacing.
    SweepResult run_bias_vs_spacing(const SweepRequest &request);
    /// Uses power_grid_dbm[0] (40 dBm when empty). Size-major rows.
    SweepResult run_crlb_vs_spacing(const SweepRequest &request);
    SweepResult run_mc_rmse(const SweepRequest &request);
    SweepResult run_sweep(const SweepRequest &request);

    /// Header plus one line per row; floats with 17 significant digits.
    std::string to_csv(const SweepResult &result);
    /// Throws FileError.
    void emit_csv(const SweepResult &result, const std::filesystem::path &path);

    /// Metadata as JSON (scenario echo, seed, version, wall clock).
    std::string metadata_json(const SweepResult &result);

    struct ImpedanceSweepRow
    {
        double d_over_lambda;
        Impedance z;
    };

    /// Two side-by-side scenario dipoles at horizontal distance d.
    std::vector<ImpedanceSweepRow> run_impedance_sweep(const Scenario &scenario,
                                                       const std::vector<double> &distances_over_lambda,
                                                       const QuadratureSpec &quad = {});
    std::string impedance_sweep_csv(const std::vector<ImpedanceSweepRow> &rows);

    /// Writes `text` to `path`, throwing FileError on failure.
    void write_text_file(const std::filesystem::path &path, const std::string &text);

    /// Formats with 17 significant digits (round-trip exact for doubles).
    std::string format_double(double value);

    const char *version_string();
}

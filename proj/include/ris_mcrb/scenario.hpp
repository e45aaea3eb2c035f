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
#include <string>
#include <string_view>

#include "ris_mcrb/geometry.hpp"
#include "ris_mcrb/noise.hpp"

namespace ris_mcrb
{
    /*!
     * Flat key/value scenario description, as read from a config file.
     *
     * Lengths of the dipoles and the grid pitch are given in wavelengths so the
     * same file stays meaningful when the frequency changes. Every field has the
     * default of the reference 28 GHz setup.
     */
    struct ScenarioConfig
    {
        double frequency_ghz = 28.0;
        double half_length_over_lambda = 1.0 / 64.0;
        double radius_over_lambda = 1.0 / 500.0;
        Vec3 tx_position_m{5.0, -5.0, 3.0};
        Vec3 rx_position_m{5.0, 5.0, 1.0};
        Vec3 ris_center_m{0.0, 0.0, 0.0};
        long long ris_n1 = 4;
        long long ris_n2 = 4;
        double ris_spacing_over_lambda = 0.5;
        long long num_transmissions = 256;
        double load_r_min_ohm = 0.1;
        double load_r_max_ohm = 10.1;
        double load_l_min_nh = 0.1;
        double load_l_max_nh = 10.1;
        double noise_psd_dbm_hz = -173.855;
        double noise_figure_db = 10.0;
        double noise_bandwidth_hz = 1.0;
        std::uint64_t seed = 1;
    };

    struct Interval
    {
        double min;
        double max;
    };

    /// Validated physical setup. Immutable once built by make_scenario.
    struct Scenario
    {
        ScenarioConfig config;  // echo of the values the scenario was built from
        PhysicalConstants constants;
        Radiator tx;
        Radiator rx;
        RisGrid ris;
        double element_half_length;  // m
        double element_wire_radius;  // m
        NoiseModel noise;
        std::size_t num_transmissions;
        Interval load_resistance;  // ohm
        Interval load_inductance;  // H
        std::uint64_t rng_seed;

        std::size_t num_elements() const { return ris.size(); }
        std::vector<Radiator> ris_radiators() const;
    };

    /// Builds and validates; throws ValidationError naming the first bad field.
    Scenario make_scenario(const ScenarioConfig &config);

    /// Same scenario with a different grid size and pitch (pitch in wavelengths).
    Scenario with_ris_grid(const Scenario &scenario, std::size_t n1, std::size_t n2, double spacing_over_lambda);

    /// Parses flat YAML `key: value` text. Missing keys keep their defaults, unknown
    /// keys are rejected. Throws ParseError (with line) or ValidationError.
    ScenarioConfig parse_scenario_config(std::string_view text);
    Scenario load_scenario(std::string_view config_text);
    Scenario load_scenario_file(const std::string &path);

    /// Emits every key with round-trip exact numbers; parse_scenario_config inverts it.
    std::string serialize_scenario(const ScenarioConfig &config);
}

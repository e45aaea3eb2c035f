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

#include "ris_mcrb/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "ris_mcrb/errors.hpp"

namespace ris_mcrb
{
    namespace
    {
        int line_of(const YAML::Node &node)
        {
            const auto mark = node.Mark();
            return mark.line >= 0 ? mark.line + 1 : 0;
        }

        template <typename T>
        T scalar_as(const YAML::Node &node, const std::string &key, const char *expected)
        {
            if (!node.IsScalar())
                throw ParseError(key + ": expected " + expected, line_of(node));
            try
            {
                return node.as<T>();
            }
            catch (const YAML::Exception &)
            {
                throw ParseError(key + ": expected " + expected + ", got '" + node.Scalar() + "'", line_of(node));
            }
        }

        Vec3 vec3_as(const YAML::Node &node, const std::string &key)
        {
            if (!node.IsSequence() || node.size() != 3)
                throw ParseError(key + ": expected a list of 3 numbers", line_of(node));
            Vec3 v;
            for (std::size_t i = 0; i < 3; ++i)
                v[static_cast<Eigen::Index>(i)] = scalar_as<double>(node[i], key, "a number");
            return v;
        }

        using Setter = std::function<void(ScenarioConfig &, const YAML::Node &, const std::string &)>;

        Setter real(double ScenarioConfig::*field)
        {
            return [field](ScenarioConfig &c, const YAML::Node &n, const std::string &k)
            { c.*field = scalar_as<double>(n, k, "a number"); };
        }
        Setter integer(long long ScenarioConfig::*field)
        {
            return [field](ScenarioConfig &c, const YAML::Node &n, const std::string &k)
            { c.*field = scalar_as<long long>(n, k, "an integer"); };
        }
        Setter vector3(Vec3 ScenarioConfig::*field)
        {
            return [field](ScenarioConfig &c, const YAML::Node &n, const std::string &k)
            { c.*field = vec3_as(n, k); };
        }

        const std::map<std::string, Setter> &setters()
        {
            static const std::map<std::string, Setter> table = {
                {"frequency_ghz", real(&ScenarioConfig::frequency_ghz)},
                {"half_length_over_lambda", real(&ScenarioConfig::half_length_over_lambda)},
                {"radius_over_lambda", real(&ScenarioConfig::radius_over_lambda)},
                {"tx_position_m", vector3(&ScenarioConfig::tx_position_m)},
                {"rx_position_m", vector3(&ScenarioConfig::rx_position_m)},
                {"ris_center_m", vector3(&ScenarioConfig::ris_center_m)},
                {"ris_n1", integer(&ScenarioConfig::ris_n1)},
                {"ris_n2", integer(&ScenarioConfig::ris_n2)},
                {"ris_spacing_over_lambda", real(&ScenarioConfig::ris_spacing_over_lambda)},
                {"num_transmissions", integer(&ScenarioConfig::num_transmissions)},
                {"load_r_min_ohm", real(&ScenarioConfig::load_r_min_ohm)},
                {"load_r_max_ohm", real(&ScenarioConfig::load_r_max_ohm)},
                {"load_l_min_nh", real(&ScenarioConfig::load_l_min_nh)},
                {"load_l_max_nh", real(&ScenarioConfig::load_l_max_nh)},
                {"noise_psd_dbm_hz", real(&ScenarioConfig::noise_psd_dbm_hz)},
                {"noise_figure_db", real(&ScenarioConfig::noise_figure_db)},
                {"noise_bandwidth_hz", real(&ScenarioConfig::noise_bandwidth_hz)},
                {"seed", [](ScenarioConfig &c, const YAML::Node &n, const std::string &k)
                 { c.seed = scalar_as<std::uint64_t>(n, k, "a non-negative integer"); }},
            };
            return table;
        }

        void require(bool ok, const char *field, const std::string &what)
        {
            if (!ok)
                throw ValidationError(field, what);
        }

        bool positive(double v) { return v > 0.0 && std::isfinite(v); }

        bool inside_box(const Vec3 &p, const Vec3 &lo, const Vec3 &hi)
        {
            return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
        }

        std::string fmt_vec(const Vec3 &v)
        {
            return fmt::format("[{:.17g}, {:.17g}, {:.17g}]", v.x(), v.y(), v.z());
        }
    }

    std::vector<Radiator> Scenario::ris_radiators() const
    {
        return grid_radiators(ris, element_half_length, element_wire_radius);
    }

    Scenario make_scenario(const ScenarioConfig &cfg)
    {
        require(positive(cfg.frequency_ghz), "frequency_ghz", "must be positive");
        require(positive(cfg.half_length_over_lambda), "half_length_over_lambda", "must be positive");
        require(positive(cfg.radius_over_lambda), "radius_over_lambda", "must be positive");
        require(cfg.radius_over_lambda < cfg.half_length_over_lambda, "radius_over_lambda",
                "wire radius must be smaller than the half length");
        require(cfg.tx_position_m.allFinite(), "tx_position_m", "must be finite");
        require(cfg.rx_position_m.allFinite(), "rx_position_m", "must be finite");
        require(cfg.ris_center_m.allFinite(), "ris_center_m", "must be finite");
        require(cfg.ris_n1 >= 1, "ris_n1", "must be at least 1");
        require(cfg.ris_n2 >= 1, "ris_n2", "must be at least 1");
        require(positive(cfg.ris_spacing_over_lambda), "ris_spacing_over_lambda", "must be positive");
        require(cfg.num_transmissions >= 1, "num_transmissions", "must be at least 1");
        require(std::isfinite(cfg.load_r_min_ohm) && cfg.load_r_min_ohm >= 0.0, "load_r_min_ohm",
                "must be non-negative");
        require(std::isfinite(cfg.load_r_max_ohm) && cfg.load_r_max_ohm >= cfg.load_r_min_ohm, "load_r_max_ohm",
                "must be at least load_r_min_ohm");
        require(positive(cfg.load_l_min_nh), "load_l_min_nh", "must be positive");
        require(std::isfinite(cfg.load_l_max_nh) && cfg.load_l_max_nh >= cfg.load_l_min_nh, "load_l_max_nh",
                "must be at least load_l_min_nh");
        require(std::isfinite(cfg.noise_psd_dbm_hz), "noise_psd_dbm_hz", "must be finite");
        require(std::isfinite(cfg.noise_figure_db), "noise_figure_db", "must be finite");
        require(positive(cfg.noise_bandwidth_hz), "noise_bandwidth_hz", "must be positive");

        const auto n1 = static_cast<std::size_t>(cfg.ris_n1);
        const auto n2 = static_cast<std::size_t>(cfg.ris_n2);
        const auto g = static_cast<std::size_t>(cfg.num_transmissions);
        // D is 2G x 2N; full column rank needs G >= N.
        require(g >= n1 * n2, "num_transmissions",
                fmt::format("must be at least the number of RIS elements ({}), got {}", n1 * n2, g));

        Scenario s;
        s.config = cfg;
        s.constants = derive_constants(cfg.frequency_ghz * 1e9);
        const double lambda = s.constants.wavelength;
        s.element_half_length = cfg.half_length_over_lambda * lambda;
        s.element_wire_radius = cfg.radius_over_lambda * lambda;
        s.tx = Radiator{cfg.tx_position_m, s.element_half_length, s.element_wire_radius};
        s.rx = Radiator{cfg.rx_position_m, s.element_half_length, s.element_wire_radius};
        s.ris = build_ris_grid(n1, n2, cfg.ris_spacing_over_lambda * lambda, cfg.ris_center_m);
        s.noise = NoiseModel{cfg.noise_psd_dbm_hz, cfg.noise_figure_db, cfg.noise_bandwidth_hz};
        s.num_transmissions = g;
        s.load_resistance = {cfg.load_r_min_ohm, cfg.load_r_max_ohm};
        s.load_inductance = {cfg.load_l_min_nh * 1e-9, cfg.load_l_max_nh * 1e-9};
        s.rng_seed = cfg.seed;

        Vec3 lo = s.ris.element_positions.front();
        Vec3 hi = lo;
        for (const auto &p : s.ris.element_positions)
        {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        lo.z() -= s.element_half_length;
        hi.z() += s.element_half_length;
        require(!inside_box(s.tx.position, lo, hi), "tx_position_m", "lies inside the RIS bounding box");
        require(!inside_box(s.rx.position, lo, hi), "rx_position_m", "lies inside the RIS bounding box");
        return s;
    }

    Scenario with_ris_grid(const Scenario &scenario, std::size_t n1, std::size_t n2, double spacing_over_lambda)
    {
        ScenarioConfig cfg = scenario.config;
        cfg.ris_n1 = static_cast<long long>(n1);
        cfg.ris_n2 = static_cast<long long>(n2);
        cfg.ris_spacing_over_lambda = spacing_over_lambda;
        return make_scenario(cfg);
    }

    ScenarioConfig parse_scenario_config(std::string_view text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(std::string(text));
        }
        catch (const YAML::ParserException &e)
        {
            throw ParseError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
        }

        ScenarioConfig cfg;
        if (root.IsNull())
            return cfg;
        if (!root.IsMap())
            throw ParseError("scenario config must be a flat key/value mapping", line_of(root));

        const auto &table = setters();
        for (const auto &kv : root)
        {
            const auto key = kv.first.as<std::string>();
            const auto it = table.find(key);
            if (it == table.end())
                throw ParseError("unknown key '" + key + "'", line_of(kv.first));
            if (kv.second.IsNull())
                throw ParseError(key + ": missing value", line_of(kv.first));
            it->second(cfg, kv.second, key);
        }
        return cfg;
    }

    Scenario load_scenario(std::string_view config_text)
    {
        return make_scenario(parse_scenario_config(config_text));
    }

    Scenario load_scenario_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw FileError(path, "cannot open scenario config");
        std::ostringstream buf;
        buf << in.rdbuf();
        return load_scenario(buf.str());
    }

    std::string serialize_scenario(const ScenarioConfig &c)
    {
        std::string out;
        auto line = [&out](const char *key, const std::string &value) { out += fmt::format("{}: {}\n", key, value); };
        auto num = [](double v) { return fmt::format("{:.17g}", v); };
        line("frequency_ghz", num(c.frequency_ghz));
        line("half_length_over_lambda", num(c.half_length_over_lambda));
        line("radius_over_lambda", num(c.radius_over_lambda));
        line("tx_position_m", fmt_vec(c.tx_position_m));
        line("rx_position_m", fmt_vec(c.rx_position_m));
        line("ris_center_m", fmt_vec(c.ris_center_m));
        line("ris_n1", std::to_string(c.ris_n1));
        line("ris_n2", std::to_string(c.ris_n2));
        line("ris_spacing_over_lambda", num(c.ris_spacing_over_lambda));
        line("num_transmissions", std::to_string(c.num_transmissions));
        line("load_r_min_ohm", num(c.load_r_min_ohm));
        line("load_r_max_ohm", num(c.load_r_max_ohm));
        line("load_l_min_nh", num(c.load_l_min_nh));
        line("load_l_max_nh", num(c.load_l_max_nh));
        line("noise_psd_dbm_hz", num(c.noise_psd_dbm_hz));
        line("noise_figure_db", num(c.noise_figure_db));
        line("noise_bandwidth_hz", num(c.noise_bandwidth_hz));
        line("seed", std::to_string(c.seed));
        return out;
    }
}

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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ris_mcrb/errors.hpp"
#include "ris_mcrb/experiments.hpp"
#include "test_helpers.hpp"

using namespace ris_mcrb;
using testing::rel_err;

namespace
{
    std::vector<std::vector<std::string>> parse_csv(const std::string &text)
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
        {
            std::vector<std::string> cells;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                cells.push_back(cell);
            rows.push_back(cells);
        }
        return rows;
    }

    SweepRequest request(SweepKind kind)
    {
        SweepRequest r;
        r.kind = kind;
        r.scenario = load_scenario("num_transmissions: 64\n");
        return r;
    }

    std::string read_file(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
}

TEST_CASE("format_double round-trips")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double v = std::pow(10.0, u(rng)) * (i % 2 ? -1.0 : 1.0);
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("SweepRequest validation")
{
    auto r = request(SweepKind::lb_vs_power);
    CHECK_THROWS_AS(r.validate(), InvalidArgument);
    r.power_grid_dbm = {10, 20};
    r.spacing_grid = {0.1};
    CHECK_NOTHROW(r.validate());
    r.power_grid_dbm = {20, 10};
    CHECK_THROWS_AS(r.validate(), InvalidArgument);
    r.power_grid_dbm = {10, 10};
    CHECK_THROWS_AS(r.validate(), InvalidArgument);

    auto m = request(SweepKind::mc_rmse);
    m.power_grid_dbm = {10};
    m.spacing_grid = {0.1};
    CHECK_THROWS_AS(m.validate(), InvalidArgument);
    m.trials = 1;
    CHECK_NOTHROW(m.validate());

    auto b = request(SweepKind::bias_vs_spacing);
    b.spacing_grid = {0.1, 0.2};
    b.sizes = {{0, 4}};
    CHECK_THROWS_AS(b.validate(), InvalidArgument);
    CHECK_THROWS_AS(run_bias_vs_spacing(r), InvalidArgument);
}

TEST_CASE("lb-vs-power sweep")
{
    auto r = request(SweepKind::lb_vs_power);
    r.power_grid_dbm = {0, 20, 40};
    r.spacing_grid = {0.05, 0.5};
    const auto res = run_lb_vs_power(r);
    REQUIRE(res.rows.size() == 6);
    CHECK(!res.has_rmse);
    // spacing-major ordering
    CHECK(res.rows[0].d_over_lambda == 0.05);
    CHECK(res.rows[2].p_t_dbm == 40);
    CHECK(res.rows[3].d_over_lambda == 0.5);
    for (std::size_t i = 0; i < 6; i += 3)
    {
        CHECK(res.rows[i].report.tr_bias == res.rows[i + 2].report.tr_bias);
        CHECK(rel_err(res.rows[i].report.crlb / res.rows[i + 1].report.crlb, 10.0) < 1e-12);
        CHECK(res.rows[i + 1].report.lb <= res.rows[i].report.lb);
    }
    CHECK(res.metadata.seed == 1);
    CHECK(res.metadata.code_version == std::string(version_string()));
    CHECK(res.metadata.wall_clock_seconds >= 0.0);

    SUBCASE("matched single point gives lb = crlb")
    {
        auto mr = r;
        mr.power_grid_dbm = {30};
        mr.spacing_grid = {0.02};
        mr.matched = true;
        const auto m = run_lb_vs_power(mr);
        REQUIRE(m.rows.size() == 1);
        CHECK(rel_err(m.rows[0].report.lb, m.rows[0].report.crlb) < 1e-12);
        CHECK(m.rows[0].report.tr_bias == 0.0);
    }
    SUBCASE("grid-point independence")
    {
        auto sub = r;
        sub.power_grid_dbm = {20};
        sub.spacing_grid = {0.5};
        const auto s = run_lb_vs_power(sub);
        REQUIRE(s.rows.size() == 1);
        CHECK(parse_csv(to_csv(s))[1] == parse_csv(to_csv(res))[5]);
        CHECK(s.rows[0].report.lb == res.rows[4].report.lb);
        CHECK(s.rows[0].report.crlb == res.rows[4].report.crlb);
        CHECK(s.rows[0].report.tr_bias == res.rows[4].report.tr_bias);
    }
    SUBCASE("cache agrees with direct evaluation")
    {
        auto nc = r;
        nc.use_cache = false;
        const auto n = run_lb_vs_power(nc);
        for (std::size_t i = 0; i < res.rows.size(); ++i)
        {
            CHECK(rel_err(n.rows[i].report.lb, res.rows[i].report.lb) < 1e-12);
            CHECK(rel_err(n.rows[i].report.crlb, res.rows[i].report.crlb) < 1e-12);
            CHECK(rel_err(n.rows[i].report.tr_bias, res.rows[i].report.tr_bias) < 1e-12);
        }
    }
}

TEST_CASE("mc-rmse sweep")
{
    auto r = request(SweepKind::mc_rmse);
    r.power_grid_dbm = {40};
    r.spacing_grid = {0.1};
    SUBCASE("one noiseless trial equals the bias norm")
    {
        r.trials = 1;
        r.noiseless = true;
        const auto res = run_mc_rmse(r);
        REQUIRE(res.rows.size() == 1);
        REQUIRE(res.rows[0].report.rmse.has_value());
        CHECK(rel_err(*res.rows[0].report.rmse, std::sqrt(res.rows[0].report.tr_bias)) < 1e-9);
    }
    SUBCASE("removing a power point leaves the others unchanged")
    {
        r.trials = 20;
        r.power_grid_dbm = {0, 40};
        const auto full = run_mc_rmse(r);
        r.power_grid_dbm = {40};
        const auto part = run_mc_rmse(r);
        CHECK(*full.rows[1].report.rmse == *part.rows[0].report.rmse);
        CHECK(parse_csv(to_csv(full))[2] == parse_csv(to_csv(part))[1]);
    }
}

TEST_CASE("spacing sweeps")
{
    auto b = request(SweepKind::bias_vs_spacing);
    b.spacing_grid = {0.1, 0.5};
    b.sizes = {{2, 2}, {3, 3}};
    const auto res = run_bias_vs_spacing(b);
    REQUIRE(res.rows.size() == 4);
    auto rows = parse_csv(to_csv(res));
    CHECK(rows[0] == std::vector<std::string>{"d_over_lambda", "n1", "n2", "sqrt_tr_bias"});
    CHECK(rows.size() == 5);
    for (const auto &row : res.rows)
        CHECK(row.report.tr_bias > 0.0);

    auto c = request(SweepKind::crlb_vs_spacing);
    c.spacing_grid = {0.1, 0.5};
    c.sizes = {{2, 2}};
    const auto cr = run_crlb_vs_spacing(c);
    REQUIRE(cr.rows.size() == 2);
    CHECK(parse_csv(to_csv(cr))[0] == std::vector<std::string>{"d_over_lambda", "n1", "n2", "crlb"});
    CHECK(cr.rows[0].p_t_dbm == 40.0);
    for (const auto &row : cr.rows)
        CHECK(row.report.tr_bias == 0.0);
}

TEST_CASE("CSV output")
{
    auto r = request(SweepKind::lb_vs_power);
    r.power_grid_dbm = {-10, 35.5, 80};
    r.spacing_grid = {0.02};
    const auto res = run_sweep(r);
    const auto text = to_csv(res);
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"p_t_dbm", "d_over_lambda", "tr_mcrb", "tr_bias", "lb", "crlb"});
    for (std::size_t i = 0; i < res.rows.size(); ++i)
    {
        const auto &rep = res.rows[i].report;
        const auto &cells = rows[i + 1];
        REQUIRE(cells.size() == 6);
        CHECK(std::stod(cells[0]) == res.rows[i].p_t_dbm);
        CHECK(std::stod(cells[1]) == res.rows[i].d_over_lambda);
        CHECK(std::stod(cells[2]) == rep.tr_mcrb);
        CHECK(std::stod(cells[3]) == rep.tr_bias);
        CHECK(std::stod(cells[4]) == rep.lb);
        CHECK(std::stod(cells[5]) == rep.crlb);
    }

    const auto dir = std::filesystem::temp_directory_path() / "ris_mcrb_unit_csv";
    std::filesystem::create_directories(dir);
    emit_csv(res, dir / "a.csv");
    emit_csv(run_sweep(r), dir / "b.csv");
    CHECK(read_file(dir / "a.csv") == text);
    CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));

    SweepResult empty;
    empty.kind = SweepKind::bias_vs_spacing;
    emit_csv(empty, dir / "empty.csv");
    CHECK(read_file(dir / "empty.csv") == "d_over_lambda,n1,n2,sqrt_tr_bias\n");

    try
    {
        emit_csv(res, dir / "missing_subdir" / "x.csv");
        FAIL("expected FileError");
    }
    catch (const FileError &e)
    {
        CHECK(e.path().find("missing_subdir") != std::string::npos);
    }
    std::filesystem::remove_all(dir);

    const auto meta = nlohmann::json::parse(metadata_json(res));
    CHECK(meta.at("seed").get<std::uint64_t>() == 1);
    CHECK(meta.at("code_version").get<std::string>() == version_string());
    CHECK(meta.contains("wall_clock_seconds"));
    CHECK(load_scenario(meta.at("scenario").get<std::string>()).num_transmissions == 64);
}

TEST_CASE("impedance sweep")
{
    const auto sc = load_scenario("");
    const auto rows = run_impedance_sweep(sc, {0.1, 0.5});
    REQUIRE(rows.size() == 2);
    CHECK(std::abs(rows[0].z.value) == doctest::Approx(0.978).epsilon(0.05));
    const auto csv = parse_csv(impedance_sweep_csv(rows));
    CHECK(csv[0] == std::vector<std::string>{"d_over_lambda", "re_z_ohm", "im_z_ohm", "abs_z_ohm"});
    CHECK(std::stod(csv[1][1]) == rows[0].z.value.real());
    CHECK(std::stod(csv[2][3]) == std::abs(rows[1].z.value));
    CHECK_THROWS_AS(run_impedance_sweep(sc, {0.0}), InvalidArgument);
}

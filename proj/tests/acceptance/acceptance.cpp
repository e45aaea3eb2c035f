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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ris_mcrb/bounds.hpp"
#include "ris_mcrb/experiments.hpp"
#include "test_helpers.hpp"

using namespace ris_mcrb;
using testing::rel_err;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::vector<std::string> notes;

        void check(bool ok, const std::string &what)
        {
            if (!ok)
                pass = false;
            notes.push_back((ok ? "ok: " : "FAILED: ") + what);
        }
    };

    const std::vector<double> spacing_grid = {0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.5};
    const std::vector<GridSize> sizes = {{4, 4}, {8, 8}, {12, 12}};

    std::vector<double> power_grid()
    {
        std::vector<double> p;
        for (double v = -10.0; v <= 80.0; v += 10.0)
            p.push_back(v);
        return p;
    }

    std::string g(double v) { return fmt::format("{:.4g}", v); }

    // ---- AC1 -----------------------------------------------------------------
    Outcome ac1()
    {
        Outcome o;
        const auto sc = load_scenario("");
        const std::vector<std::pair<double, double>> reference = {
            {0.01, 286.51}, {0.1, 0.97752}, {0.5, 0.08785}, {2.5, 0.018400}};
        std::vector<double> d;
        for (const auto &p : reference)
            d.push_back(p.first);
        const auto rows = run_impedance_sweep(sc, d);
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            const double z = std::abs(rows[i].z.value);
            o.check(std::abs(z / reference[i].second - 1.0) <= 0.10,
                    fmt::format("|Z|({}λ) = {} vs reference {}", reference[i].first, g(z), reference[i].second));
        }
        std::vector<double> dense;
        for (int i = 0; i <= 60; ++i)
            dense.push_back(0.05 * std::pow(2.5 / 0.05, i / 60.0));
        const auto drows = run_impedance_sweep(sc, dense);
        bool decreasing = true;
        for (std::size_t i = 1; i < drows.size(); ++i)
            decreasing = decreasing && std::abs(drows[i].z.value) < std::abs(drows[i - 1].z.value);
        o.check(decreasing, "|Z| strictly decreasing on 61 log-spaced points in [0.05, 2.5]λ");
        return o;
    }

    // ---- AC2 -----------------------------------------------------------------
    Outcome ac2()
    {
        Outcome o;
        std::mt19937_64 rng(2024);
        double worst_identity = 0.0, worst_matched = 0.0;
        for (int i = 0; i < 100; ++i)
        {
            const Eigen::Index n = 1 + i % 8;
            const Eigen::Index gcount = n + 2 + i % 13;
            const CMatrix bt = testing::random_cmatrix(gcount, n, rng);
            const CMatrix be = bt + 0.2 * testing::random_cmatrix(gcount, n, rng);
            const auto dt = realify(bt, true), de = realify(be, false);
            const RVector x = testing::random_rvector(2 * n, rng);
            const double gamma = std::pow(10.0, 1.0 + 0.1 * i);
            const auto rep = lower_bound(de, dt, ChannelVector{x}, gamma);
            const double oracle = (de.D.transpose() * de.D).inverse().trace();
            worst_identity = std::max(worst_identity, rel_err(2.0 * gamma * rep.tr_mcrb, oracle));
            const auto matched = lower_bound(dt, dt, ChannelVector{x}, gamma);
            worst_matched = std::max(worst_matched, rel_err(matched.lb, crlb(dt, gamma)));
        }
        o.check(worst_identity <= 1e-10, "2γ·Tr(MCRB) = Tr((DᵀD)⁻¹) over 100 models, worst rel " + g(worst_identity));
        o.check(worst_matched <= 1e-12, "matched LB = CRLB over 100 models, worst rel " + g(worst_matched));

        SweepRequest req;
        req.kind = SweepKind::lb_vs_power;
        req.scenario = load_scenario("");
        req.spacing_grid = {0.02};
        req.power_grid_dbm = power_grid();
        const auto res = run_sweep(req);
        bool invariant = true;
        for (const auto &row : res.rows)
            invariant = invariant && row.report.tr_bias == res.rows.front().report.tr_bias;
        o.check(invariant, "Tr(Bias) bit-identical across the −10..80 dBm sweep");
        return o;
    }

    // ---- AC3 -----------------------------------------------------------------
    Outcome ac3()
    {
        Outcome o;
        std::mt19937_64 rng(77);
        double worst_closed = 0.0, worst_impl = 0.0;
        for (int i = 0; i < 20; ++i)
        {
            const Eigen::Index n = 1 + i % 8;  // 2N <= 16
            const CMatrix bt = testing::random_cmatrix(2 * n + 3, n, rng);
            const CMatrix be = bt + 0.3 * testing::random_cmatrix(2 * n + 3, n, rng);
            const RMatrix dt = realify(bt, true).D, de = realify(be, false).D;
            const RVector x = testing::random_rvector(2 * n, rng);
            const RVector minimizer = testing::cgls(de, dt * x);
            const RVector closed = (de.transpose() * de).inverse() * de.transpose() * dt * x;
            const RVector impl = pseudo_true(RealifiedModel{de, false}, RealifiedModel{dt, true}, ChannelVector{x}).x;
            worst_closed = std::max(worst_closed, (closed - minimizer).norm());
            worst_impl = std::max(worst_impl, (impl - minimizer).norm());
        }
        o.check(worst_closed <= 1e-8, "closed-form x0 vs iterative minimizer, worst " + g(worst_closed));
        o.check(worst_impl <= 1e-8, "library pseudo_true vs iterative minimizer, worst " + g(worst_impl));
        return o;
    }

    // ---- AC4 -----------------------------------------------------------------
    Outcome ac4()
    {
        Outcome o;
        SweepRequest req;
        req.kind = SweepKind::mc_rmse;
        req.scenario = load_scenario("");
        req.spacing_grid = {0.02};
        req.power_grid_dbm = {30.0};
        req.trials = 500;
        req.matched = true;
        const auto res = run_sweep(req);
        const auto &rep = res.rows.at(0).report;
        const double ratio = *rep.rmse / rep.crlb;
        o.check(ratio >= 0.95 && ratio <= 1.10,
                fmt::format("matched 4x4, G=256, 30 dBm, 500 trials: RMSE/CRLB = {:.4f}", ratio));
        return o;
    }

    // ---- AC5 -----------------------------------------------------------------
    Outcome ac5()
    {
        Outcome o;
        SweepRequest req;
        req.kind = SweepKind::lb_vs_power;
        req.scenario = load_scenario("");
        req.spacing_grid = {0.02};
        req.power_grid_dbm = power_grid();
        const auto res = run_sweep(req);
        const auto &top = res.rows.back().report;
        const double sat = top.lb / std::sqrt(top.tr_bias);
        o.check(sat >= 1.0 && sat <= 1.01, fmt::format("LB/sqrt(Tr(Bias)) at 80 dBm = {:.6f}", sat));
        double worst = 0.0;
        for (std::size_t i = 0; i + 2 < res.rows.size(); ++i)
            worst = std::max(worst, rel_err(res.rows[i].report.crlb / res.rows[i + 2].report.crlb, 10.0));
        o.check(worst <= 1e-12, "CRLB ratio per 20 dB = 10, worst rel " + g(worst));

        SweepRequest mc = req;
        mc.kind = SweepKind::mc_rmse;
        mc.power_grid_dbm = {80.0};
        mc.trials = 500;
        const auto mres = run_sweep(mc);
        const auto &m = mres.rows.at(0).report;
        const double r = *m.rmse / std::sqrt(m.tr_bias);
        o.check(std::abs(r - 1.0) <= 0.05, fmt::format("mismatched RMSE/sqrt(Tr(Bias)) at 80 dBm = {:.6f}", r));
        return o;
    }

    // ---- AC6 -----------------------------------------------------------------
    Outcome ac6()
    {
        Outcome o;
        SweepRequest req;
        req.kind = SweepKind::bias_vs_spacing;
        req.scenario = load_scenario("");
        req.spacing_grid = spacing_grid;
        req.sizes = sizes;
        const auto res = run_sweep(req);
        const std::size_t nd = spacing_grid.size();
        auto value = [&](std::size_t s, std::size_t k) { return std::sqrt(res.rows.at(s * nd + k).report.tr_bias); };
        for (std::size_t s = 0; s < sizes.size(); ++s)
        {
            bool decreasing = true;
            for (std::size_t k = 4; k < nd; ++k)  // from 0.02λ upwards
                decreasing = decreasing && value(s, k) < value(s, k - 1);
            const double plateau = value(s, 0) / value(s, 3);
            o.check(decreasing, fmt::format("{}x{}: decreasing on [0.02, 2.5]λ", sizes[s].n1, sizes[s].n2));
            o.check(plateau >= 0.5 && plateau <= 2.0,
                    fmt::format("{}x{}: plateau ratio 0.002λ/0.02λ = {:.3f}", sizes[s].n1, sizes[s].n2, plateau));
        }
        bool ordered = true;
        for (std::size_t k = 0; k < nd; ++k)
            ordered = ordered && value(2, k) > value(1, k) && value(1, k) > value(0, k);
        o.check(ordered, "12x12 > 8x8 > 4x4 at every spacing");
        const double at002 = value(0, 3), at05 = value(0, 7);
        o.check(at002 >= 1.8e-4 / 3.0 && at002 <= 1.8e-4 * 3.0, "4x4 at 0.02λ = " + g(at002) + " (reference ≈1.8e-4)");
        o.check(at05 >= 2.4e-7 / 3.0 && at05 <= 2.4e-7 * 3.0, "4x4 at 0.5λ = " + g(at05) + " (reference ≈2.4e-7)");
        return o;
    }

    // ---- AC7 -----------------------------------------------------------------
    Outcome ac7()
    {
        Outcome o;
        SweepRequest req;
        req.kind = SweepKind::crlb_vs_spacing;
        req.scenario = load_scenario("");
        req.spacing_grid = spacing_grid;
        req.sizes = sizes;
        req.power_grid_dbm = {40.0};
        const auto res = run_sweep(req);
        const std::size_t nd = spacing_grid.size();
        auto value = [&](std::size_t s, std::size_t k) { return res.rows.at(s * nd + k).report.crlb; };
        for (std::size_t s = 0; s < sizes.size(); ++s)
        {
            double lo = 1e300, hi = 0.0;
            for (std::size_t k = 5; k < nd; ++k)  // d >= 0.1λ
            {
                lo = std::min(lo, value(s, k));
                hi = std::max(hi, value(s, k));
            }
            bool rising = true;
            for (std::size_t k = 0; k < 4; ++k)  // 0.05λ down to 0.002λ
                rising = rising && value(s, k) > value(s, k + 1);
            o.check(hi / lo - 1.0 < 0.10,
                    fmt::format("{}x{}: flat for d >= 0.1λ (variation {:.2f}%)", sizes[s].n1, sizes[s].n2,
                                100.0 * (hi / lo - 1.0)));
            o.check(rising, fmt::format("{}x{}: increasing as d shrinks from 0.05λ", sizes[s].n1, sizes[s].n2));
        }
        bool ordered = true;
        for (std::size_t k = 0; k < nd; ++k)
            ordered = ordered && value(2, k) > value(1, k) && value(1, k) > value(0, k);
        o.check(ordered, "12x12 > 8x8 > 4x4 at every spacing");
        const double level = value(0, nd - 1);
        o.check(level >= 1.6e-5 / 3.0 && level <= 1.6e-5 * 3.0, "4x4 at 2.5λ, 40 dBm = " + g(level) + " (reference ≈1.6e-5)");
        return o;
    }

    struct Criterion
    {
        const char *id;
        const char *title;
        double budget_seconds;
        std::function<Outcome()> run;
    };
}

int main()
{
    const std::vector<Criterion> criteria = {
        {"AC1", "impedance versus distance", 5.0, ac1},
        {"AC2", "exact MCRB identities", 10.0, ac2},
        {"AC3", "pseudo-true parameter oracle", 30.0, ac3},
        {"AC4", "estimator efficiency", 120.0, ac4},
        {"AC5", "saturation behaviour", 600.0, ac5},
        {"AC6", "bias versus spacing trends", 600.0, ac6},
        {"AC7", "CRLB versus spacing trends", 600.0, ac7},
    };

    int failures = 0;
    for (const auto &c : criteria)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.check(secs <= c.budget_seconds, fmt::format("runtime {:.2f} s within {:.0f} s", secs, c.budget_seconds));
        failures += o.pass ? 0 : 1;
        fmt::print("{} {} - {} ({:.2f} s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs);
        for (const auto &n : o.notes)
            fmt::print("      {}\n", n);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

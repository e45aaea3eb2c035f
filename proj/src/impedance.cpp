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

#include "ris_mcrb/impedance.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include <fmt/format.h>

#include "parallel.hpp"
#include "ris_mcrb/errors.hpp"

namespace ris_mcrb
{
    namespace
    {
        GaussLegendreRule compute_rule(int n)
        {
            GaussLegendreRule rule;
            rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
            rule.weights.assign(static_cast<std::size_t>(n), 0.0);
            const int half = (n + 1) / 2;
            for (int i = 0; i < half; ++i)
            {
                // Newton on P_n from the Tricomi initial guess.
                double x = std::cos(pi * (i + 0.75) / (n + 0.5));
                double dp = 0.0;
                for (int iter = 0; iter < 100; ++iter)
                {
                    double p0 = 1.0, p1 = x;
                    for (int k = 2; k <= n; ++k)
                    {
                        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n * (x * p1 - p0) / (x * x - 1.0);
                    const double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16)
                        break;
                }
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double w = 2.0 / ((1.0 - x * x) * dp * dp);
                const auto lo = static_cast<std::size_t>(i);
                const auto hi = static_cast<std::size_t>(n - 1 - i);
                rule.nodes[lo] = -x;
                rule.nodes[hi] = x;
                rule.weights[lo] = w;
                rule.weights[hi] = w;
            }
            if (n % 2 == 1)
                rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
            return rule;
        }

        struct Panelled
        {
            std::vector<double> t;       // abscissae
            std::vector<double> w;       // weights
            std::vector<double> shape;   // sin(k0 (h - |t|)) / sin(k0 h)
        };

        // Nodes on [-h, 0] and [0, h], each carrying the normalized current profile.
        Panelled panel_nodes(const GaussLegendreRule &rule, double h, double k0, double sin_kh)
        {
            Panelled out;
            const std::size_t n = rule.nodes.size();
            out.t.reserve(2 * n);
            out.w.reserve(2 * n);
            out.shape.reserve(2 * n);
            for (int side = -1; side <= 1; side += 2)
                for (std::size_t i = 0; i < n; ++i)
                {
                    const double t = 0.5 * h * (rule.nodes[i] + side);
                    out.t.push_back(t);
                    out.w.push_back(0.5 * h * rule.weights[i]);
                    out.shape.push_back(std::sin(k0 * (h - std::abs(t))) / sin_kh);
                }
            return out;
        }

        double checked_sin(double k0, double h)
        {
            const double s = std::sin(k0 * h);
            if (std::abs(s) < 1e-9)
                throw InvalidGeometry(fmt::format("sin(k0 h) vanishes for half length {:.17g} m", h));
            return s;
        }

        struct RawIntegral
        {
            cdouble value;
            double abs_sum;
        };

        RawIntegral integrate_raw(const PairGeometry &g, const PhysicalConstants &c, int order)
        {
            const double k0 = c.wavenumber;
            const auto &rule = gauss_legendre(order);
            const auto p = panel_nodes(rule, g.half_length_p, k0, checked_sin(k0, g.half_length_p));
            const auto q = panel_nodes(rule, g.half_length_q, k0, checked_sin(k0, g.half_length_q));

            const double k2 = k0 * k0;
            const double rho1_sq = g.rho1 * g.rho1;
            double re = 0.0, im = 0.0, abs_sum = 0.0;
            for (std::size_t iz = 0; iz < q.t.size(); ++iz)
            {
                const double z = q.t[iz];
                const double wz = q.w[iz] * q.shape[iz];
                for (std::size_t ix = 0; ix < p.t.size(); ++ix)
                {
                    const double u = z - p.t[ix] + g.rho2;
                    const double u2 = u * u;
                    const double R2 = rho1_sq + u2;
                    if (R2 == 0.0)
                        throw DegenerateGeometry("kernel distance vanishes inside the integration domain");
                    const double R = std::sqrt(R2);
                    const double inv_r = 1.0 / R;
                    const double inv_r2 = inv_r * inv_r;
                    // k0^2 - j k0/R - (k0^2 u^2 + 1)/R^2 + 3 j k0 u^2/R^3 + 3 u^2/R^4
                    const double br = k2 - (k2 * u2 + 1.0) * inv_r2 + 3.0 * u2 * inv_r2 * inv_r2;
                    const double bi = -k0 * inv_r + 3.0 * k0 * u2 * inv_r2 * inv_r;
                    const double amp = wz * p.w[ix] * p.shape[ix] * inv_r;
                    const double cs = std::cos(k0 * R);
                    const double sn = -std::sin(k0 * R);
                    // amp * e^{-j k0 R} * (br + j bi)
                    const double fr = amp * (cs * br - sn * bi);
                    const double fi = amp * (cs * bi + sn * br);
                    re += fr;
                    im += fi;
                    abs_sum += std::hypot(fr, fi);
                }
            }
            // j eta0 / (4 pi k0) prefactor
            const double pref = c.intrinsic_impedance / (4.0 * pi * k0);
            return {cdouble(-pref * im, pref * re), pref * abs_sum};
        }

        double quantize(double v)
        {
            if (v == 0.0 || !std::isfinite(v))
                return v;
            int e = 0;
            const double m = std::frexp(v, &e);
            return std::ldexp(std::nearbyint(std::ldexp(m, 42)), e - 42);
        }

        template <typename E>
        [[noreturn]] void rethrow_as(const E &e, const std::string &prefix)
        {
            throw E(prefix + e.what());
        }

        [[noreturn]] void rethrow_annotated(std::exception_ptr ep, const std::string &prefix)
        {
            try
            {
                std::rethrow_exception(ep);
            }
            catch (const ConvergenceError &e)
            {
                throw ConvergenceError(prefix + e.what(), e.previous_estimate(), e.last_estimate());
            }
            catch (const DegenerateGeometry &e)
            {
                rethrow_as(e, prefix);
            }
            catch (const InvalidGeometry &e)
            {
                rethrow_as(e, prefix);
            }
            catch (const InvalidArgument &e)
            {
                rethrow_as(e, prefix);
            }
            catch (const NumericalError &e)
            {
                rethrow_as(e, prefix);
            }
            catch (...)
            {
                throw;
            }
            throw NumericalError(prefix + "unknown failure");
        }

        // Evaluates `geoms` (optionally through `cache`) into `out`; `label(i)` names item i in errors.
        template <typename Label>
        void evaluate_all(const std::vector<PairGeometry> &geoms, const PhysicalConstants &c, const QuadratureSpec &quad,
                          ImpedanceCache *cache, std::vector<Impedance> &out, Label label)
        {
            out.assign(geoms.size(), Impedance{});
            std::vector<std::size_t> todo;  // representative indices to integrate
            std::vector<std::size_t> rep(geoms.size());
            std::vector<ImpedanceCache::Key> keys;

            if (cache)
            {
                keys.reserve(geoms.size());
                std::map<ImpedanceCache::Key, std::size_t> first;
                for (std::size_t i = 0; i < geoms.size(); ++i)
                {
                    keys.push_back(ImpedanceCache::key_of(geoms[i]));
                    const auto [it, inserted] = first.emplace(keys.back(), i);
                    rep[i] = it->second;
                    if (inserted && !cache->lookup(keys.back(), out[i]))
                        todo.push_back(i);
                }
            }
            else
            {
                for (std::size_t i = 0; i < geoms.size(); ++i)
                {
                    rep[i] = i;
                    todo.push_back(i);
                }
            }

            detail::parallel_for(todo.size(), [&](std::size_t t)
            {
                const std::size_t i = todo[t];
                try
                {
                    out[i] = integrate_impedance(geoms[i], c, quad);
                }
                catch (...)
                {
                    rethrow_annotated(std::current_exception(), label(i) + ": ");
                }
            });

            if (cache)
            {
                for (std::size_t i : todo)
                    cache->store(keys[i], out[i]);
                for (std::size_t i = 0; i < geoms.size(); ++i)
                    out[i] = out[rep[i]];
            }
        }
    }

    void QuadratureSpec::validate() const
    {
        if (base_order < 8)
            throw InvalidArgument("quadrature base order must be at least 8");
        if (refinement_factor < 2)
            throw InvalidArgument("quadrature refinement factor must be at least 2");
        if (!(rel_tolerance >= 1e-14 && rel_tolerance <= 1e-3))
            throw InvalidArgument("quadrature relative tolerance must lie in [1e-14, 1e-3]");
        if (max_refinements < 1)
            throw InvalidArgument("quadrature needs at least one refinement");
    }

    double kernel_distance(double xi, double z, double rho1, double rho2)
    {
        const double u = z - xi + rho2;
        const double r = std::sqrt(rho1 * rho1 + u * u);
        if (r == 0.0)
            throw DegenerateGeometry("kernel distance vanishes (overlapping wire segments)");
        return r;
    }

    const GaussLegendreRule &gauss_legendre(int order)
    {
        if (order < 1)
            throw InvalidArgument("Gauss-Legendre order must be positive");
        static std::mutex mutex;
        static std::map<int, std::unique_ptr<GaussLegendreRule>> rules;
        std::lock_guard lock(mutex);
        auto &slot = rules[order];
        if (!slot)
            slot = std::make_unique<GaussLegendreRule>(compute_rule(order));
        return *slot;
    }

    PairGeometry pair_geometry(const Radiator &p, const Radiator &q)
    {
        p.validate();
        q.validate();
        if (p.position == q.position && p.half_length == q.half_length && p.wire_radius == q.wire_radius)
            return {p.wire_radius, 0.0, p.half_length, p.half_length};

        const Vec3 delta = p.position - q.position;
        const double rho1 = std::hypot(delta.x(), delta.y());
        const double rho2 = delta.z();
        if (rho1 == 0.0 && std::abs(rho2) <= p.half_length + q.half_length)
            throw DegenerateGeometry("collinear radiators overlap or touch; the kernel distance vanishes");
        return {rho1, rho2, p.half_length, q.half_length};
    }

    cdouble integrate_impedance_fixed(const PairGeometry &geometry, const PhysicalConstants &constants, int order)
    {
        return integrate_raw(geometry, constants, order).value;
    }

    Impedance integrate_impedance(const PairGeometry &g, const PhysicalConstants &c, const QuadratureSpec &quad)
    {
        quad.validate();
        if (!(g.half_length_p > 0.0) || !(g.half_length_q > 0.0) || !(g.rho1 >= 0.0))
            throw InvalidArgument("invalid pair geometry");
        if (g.rho1 == 0.0 && std::abs(g.rho2) <= g.half_length_p + g.half_length_q)
            throw DegenerateGeometry("collinear wire segments overlap; the kernel distance vanishes");

        constexpr double eps = std::numeric_limits<double>::epsilon();
        int order = quad.base_order;
        cdouble older{};
        RawIntegral prev = integrate_raw(g, c, order);
        for (int k = 1; k <= quad.max_refinements; ++k)
        {
            order *= quad.refinement_factor;
            const RawIntegral cur = integrate_raw(g, c, order);
            const double diff = std::abs(cur.value - prev.value);
            const double floor = 64.0 * eps * cur.abs_sum;
            if (diff <= std::max(quad.rel_tolerance * std::abs(cur.value), floor))
                return {cur.value, std::max(diff, floor), order};
            older = prev.value;
            prev = cur;
        }
        throw ConvergenceError(fmt::format("impedance integral did not converge after {} refinements "
                                           "(last order {})",
                                           quad.max_refinements, order),
                               older, prev.value);
    }

    Impedance mutual_impedance(const Radiator &p, const Radiator &q, const PhysicalConstants &constants,
                               const QuadratureSpec &quad)
    {
        return integrate_impedance(pair_geometry(p, q), constants, quad);
    }

    ImpedanceCache::Key ImpedanceCache::key_of(const PairGeometry &g)
    {
        return {std::bit_cast<std::uint64_t>(quantize(g.rho1)), std::bit_cast<std::uint64_t>(quantize(g.rho2)),
                std::bit_cast<std::uint64_t>(quantize(g.half_length_p)),
                std::bit_cast<std::uint64_t>(quantize(g.half_length_q))};
    }

    bool ImpedanceCache::lookup(const Key &key, Impedance &out) const
    {
        std::lock_guard lock(mutex_);
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return false;
        out = it->second;
        return true;
    }

    void ImpedanceCache::store(const Key &key, const Impedance &value)
    {
        std::lock_guard lock(mutex_);
        entries_.emplace(key, value);
    }

    std::size_t ImpedanceCache::size() const
    {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }

    void ImpedanceCache::clear()
    {
        std::lock_guard lock(mutex_);
        entries_.clear();
    }

    ImpedanceMatrices impedance_matrix(std::span<const Radiator> elements, const PhysicalConstants &constants,
                                       const QuadratureSpec &quad, ImpedanceCache *cache)
    {
        if (elements.empty())
            throw InvalidArgument("impedance matrix needs at least one element");
        quad.validate();
        const std::size_t n = elements.size();

        // Items 0..n-1 are self terms, then the unordered pairs a < b in row order.
        std::vector<PairGeometry> geoms;
        std::vector<std::pair<std::size_t, std::size_t>> index;
        geoms.reserve(n + n * (n - 1) / 2);
        index.reserve(geoms.capacity());
        for (std::size_t a = 0; a < n; ++a)
        {
            geoms.push_back(pair_geometry(elements[a], elements[a]));
            index.emplace_back(a, a);
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
            {
                try
                {
                    geoms.push_back(pair_geometry(elements[a], elements[b]));
                }
                catch (...)
                {
                    rethrow_annotated(std::current_exception(), fmt::format("RIS elements ({}, {}): ", a, b));
                }
                index.emplace_back(a, b);
            }

        std::vector<Impedance> values;
        evaluate_all(geoms, constants, quad, cache, values, [&index](std::size_t i)
                     { return fmt::format("RIS elements ({}, {})", index[i].first, index[i].second); });

        ImpedanceMatrices out;
        const auto ni = static_cast<Eigen::Index>(n);
        out.self.resize(ni);
        out.mutual = CMatrix::Zero(ni, ni);
        for (std::size_t i = 0; i < geoms.size(); ++i)
        {
            const auto [a, b] = index[i];
            const auto ia = static_cast<Eigen::Index>(a);
            const auto ib = static_cast<Eigen::Index>(b);
            if (a == b)
                out.self[ia] = values[i].value;
            else
            {
                out.mutual(ia, ib) = values[i].value;
                out.mutual(ib, ia) = values[i].value;
            }
        }
        return out;
    }

    CVector coupling_vector(const Radiator &antenna, std::span<const Radiator> elements,
                            const PhysicalConstants &constants, const QuadratureSpec &quad, ImpedanceCache *cache)
    {
        quad.validate();
        std::vector<PairGeometry> geoms;
        geoms.reserve(elements.size());
        for (std::size_t n = 0; n < elements.size(); ++n)
        {
            try
            {
                geoms.push_back(pair_geometry(elements[n], antenna));
            }
            catch (...)
            {
                rethrow_annotated(std::current_exception(), fmt::format("RIS element {} and antenna: ", n));
            }
        }

        std::vector<Impedance> values;
        evaluate_all(geoms, constants, quad, cache, values,
                     [](std::size_t i) { return fmt::format("RIS element {} and antenna", i); });

        CVector out(static_cast<Eigen::Index>(elements.size()));
        for (std::size_t n = 0; n < values.size(); ++n)
            out[static_cast<Eigen::Index>(n)] = values[n].value;
        return out;
    }

    CMatrix ImpedanceSet::zss_total() const
    {
        CMatrix total = zss_mutual;
        total.diagonal() += zss_self;
        return total;
    }
}

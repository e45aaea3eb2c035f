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

#include "ris_mcrb/channel.hpp"

#include <cmath>
#include <random>

#include <Eigen/LU>
#include <fmt/format.h>

#include "parallel.hpp"
#include "ris_mcrb/errors.hpp"

namespace ris_mcrb
{
    namespace
    {
        Eigen::PartialPivLU<CMatrix> factor_checked(const CMatrix &system, const std::string &context)
        {
            Eigen::PartialPivLU<CMatrix> lu(system);
            const double rc = lu.rcond();
            if (!(rc >= singular_rcond_threshold))
                throw SingularModel(fmt::format("{}: system is singular (rcond estimate {:.3g})", context, rc), rc);
            return lu;
        }

        void check_interval(Interval iv, const char *what)
        {
            if (!std::isfinite(iv.min) || !std::isfinite(iv.max) || iv.min > iv.max)
                throw InvalidArgument(fmt::format("{} range [{}, {}] is empty", what, iv.min, iv.max));
        }

        double draw(std::uniform_real_distribution<double> &dist, Interval iv, Rng &rng)
        {
            return iv.min == iv.max ? iv.min : dist(rng);
        }
    }

    ImpedanceSet compute_impedances(const Scenario &scenario, const QuadratureSpec &quad, ImpedanceCache *cache)
    {
        const auto elements = scenario.ris_radiators();
        ImpedanceSet set;
        set.z_st = coupling_vector(scenario.tx, elements, scenario.constants, quad, cache);
        set.z_rs = coupling_vector(scenario.rx, elements, scenario.constants, quad, cache);
        auto zss = impedance_matrix(elements, scenario.constants, quad, cache);
        set.zss_self = std::move(zss.self);
        set.zss_mutual = std::move(zss.mutual);
        return set;
    }

    RisLoadSequence sample_loads(std::size_t num_transmissions, std::size_t num_elements, Interval resistance,
                                 Interval inductance, double angular_frequency, Rng &rng)
    {
        if (num_transmissions == 0 || num_elements == 0)
            throw InvalidArgument("load sequence needs G >= 1 and N >= 1");
        check_interval(resistance, "load resistance");
        check_interval(inductance, "load inductance");
        if (!(inductance.min > 0.0))
            throw InvalidArgument("load inductance must be positive");

        std::uniform_real_distribution<double> r_dist(resistance.min, resistance.max);
        std::uniform_real_distribution<double> l_dist(inductance.min, inductance.max);
        RisLoadSequence seq;
        seq.loads.resize(static_cast<Eigen::Index>(num_transmissions), static_cast<Eigen::Index>(num_elements));
        for (Eigen::Index g = 0; g < seq.loads.rows(); ++g)
            for (Eigen::Index n = 0; n < seq.loads.cols(); ++n)
            {
                const double r = draw(r_dist, resistance, rng);
                const double l = draw(l_dist, inductance, rng);
                seq.loads(g, n) = cdouble(r, angular_frequency * l);
            }
        return seq;
    }

    RisLoadSequence sample_loads(const Scenario &scenario)
    {
        const SeedTree seeds(scenario.rng_seed);
        Rng rng = seeds.stream("loads");
        auto seq = sample_loads(scenario.num_transmissions, scenario.num_elements(), scenario.load_resistance,
                                scenario.load_inductance, scenario.constants.angular_frequency(), rng);
        seq.generation_seed = seeds.seed_for("loads");
        return seq;
    }

    cdouble e2e_channel(const CVector &z_rs, const CMatrix &zss_total, const CVector &z_ris, const CVector &z_st)
    {
        const auto n = zss_total.rows();
        if (zss_total.cols() != n || z_rs.size() != n || z_st.size() != n || z_ris.size() != n)
            throw InvalidArgument("e2e_channel: dimension mismatch");
        CMatrix system = zss_total;
        system.diagonal() += z_ris;
        const auto lu = factor_checked(system, "end-to-end channel");
        return z_rs.transpose() * lu.solve(z_st);
    }

    CMatrix build_B(const CVector &z_rs, const CVector &zss_self, const CMatrix &zss_mutual,
                    const RisLoadSequence &loads)
    {
        const auto n = z_rs.size();
        if (zss_self.size() != n || zss_mutual.rows() != n || zss_mutual.cols() != n ||
            static_cast<Eigen::Index>(loads.num_elements()) != n)
            throw InvalidArgument("build_B: dimension mismatch");

        const auto g_count = static_cast<Eigen::Index>(loads.num_transmissions());
        CMatrix B(g_count, n);
        detail::parallel_for(loads.num_transmissions(), [&](std::size_t gi)
        {
            const auto g = static_cast<Eigen::Index>(gi);
            CMatrix system = zss_mutual;
            system.diagonal() += zss_self + loads.loads.row(g).transpose();
            const auto lu = factor_checked(system, fmt::format("RIS configuration {}", gi));
            // Complex symmetric system: z_rs^T M^-1 = (M^-1 z_rs)^T.
            B.row(g) = lu.solve(z_rs).transpose();
        });
        return B;
    }

    CMatrix build_B_uncoupled(const CVector &z_rs, const CVector &zss_self, const RisLoadSequence &loads)
    {
        const auto n = z_rs.size();
        return build_B(z_rs, zss_self, CMatrix::Zero(n, n), loads);
    }

    RealifiedModel realify(const CMatrix &B, bool includes_mutual_coupling)
    {
        const auto g = B.rows();
        const auto n = B.cols();
        RealifiedModel m;
        m.includes_mutual_coupling = includes_mutual_coupling;
        m.D.resize(2 * g, 2 * n);
        m.D.topLeftCorner(g, n) = B.real();
        m.D.topRightCorner(g, n) = -B.imag();
        m.D.bottomLeftCorner(g, n) = B.imag();
        m.D.bottomRightCorner(g, n) = B.real();
        return m;
    }

    RVector realify_vec(const CVector &v)
    {
        const auto n = v.size();
        RVector x(2 * n);
        x.head(n) = v.real();
        x.tail(n) = v.imag();
        return x;
    }

    CVector complexify_vec(const RVector &x)
    {
        if (x.size() % 2 != 0)
            throw InvalidArgument("complexify_vec: odd length");
        const auto n = x.size() / 2;
        CVector v(n);
        v.real() = x.head(n);
        v.imag() = x.tail(n);
        return v;
    }

    RVector generate_observations(const RealifiedModel &model, const RVector &x, double p_t, double sigma2, Rng &rng,
                                  bool noiseless)
    {
        if (!(p_t > 0.0) || !std::isfinite(p_t))
            throw InvalidArgument("transmit power must be positive");
        if (!noiseless && (!(sigma2 > 0.0) || !std::isfinite(sigma2)))
            throw InvalidArgument("noise variance must be positive");
        if (model.D.cols() != x.size())
            throw InvalidArgument("generate_observations: dimension mismatch");

        RVector r = std::sqrt(p_t) * (model.D * x);
        if (noiseless)
            return r;
        std::normal_distribution<double> noise(0.0, std::sqrt(0.5 * sigma2));
        for (Eigen::Index i = 0; i < r.size(); ++i)
            r[i] += noise(rng);
        return r;
    }

    std::string model_to_csv(const CMatrix &B)
    {
        std::string out;
        for (Eigen::Index j = 0; j < B.cols(); ++j)
            out += fmt::format("{}re_{},im_{}", j == 0 ? "" : ",", j, j);
        out += '\n';
        for (Eigen::Index i = 0; i < B.rows(); ++i)
        {
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                out += fmt::format("{}{:.17g},{:.17g}", j == 0 ? "" : ",", B(i, j).real(), B(i, j).imag());
            out += '\n';
        }
        return out;
    }
}

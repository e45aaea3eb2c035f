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

#include "ris_mcrb/impedance.hpp"
#include "ris_mcrb/rng.hpp"
#include "ris_mcrb/scenario.hpp"
#include "ris_mcrb/types.hpp"

namespace ris_mcrb
{
    /// Tx/RIS/Rx impedances of a scenario.
    ImpedanceSet compute_impedances(const Scenario &scenario, const QuadratureSpec &quad = {},
                                    ImpedanceCache *cache = nullptr);

    /// G x N tunable loads R + j*omega*L, one row per transmission.
    struct RisLoadSequence
    {
        CMatrix loads;
        std::uint64_t generation_seed = 0;

        std::size_t num_transmissions() const { return static_cast<std::size_t>(loads.rows()); }
        std::size_t num_elements() const { return static_cast<std::size_t>(loads.cols()); }
    };

    /// Draws i.i.d. uniform R and L per (g, n), row-major in g, R before L.
    /// Throws InvalidArgument for an empty range or G, N == 0.
    RisLoadSequence sample_loads(std::size_t num_transmissions, std::size_t num_elements, Interval resistance,
                                 Interval inductance, double angular_frequency, Rng &rng);

    /// Uses the scenario's ranges and the "loads" substream of its seed.
    RisLoadSequence sample_loads(const Scenario &scenario);

    /// z_RS^T (Z_SS + diag(z_ris))^-1 z_ST via an LU solve.
    /// Throws SingularModel carrying the reciprocal condition estimate.
    cdouble e2e_channel(const CVector &z_rs, const CMatrix &zss_total, const CVector &z_ris, const CVector &z_st);

    /// Reciprocal condition threshold below which a per-configuration system is rejected.
    inline constexpr double singular_rcond_threshold = 1e-14;

    /*!
     * Model matrix B: row g = z_RS^T (Z_self + Z_mutual + Z_RIS,g)^-1.
     *
     * The system matrix is complex symmetric, so each row is the solution of
     * (Z_SS + Z_RIS,g) b = z_RS. Pass a zero `zss_mutual` (or call
     * build_B_uncoupled) to obtain the coupling-unaware model.
     */
    CMatrix build_B(const CVector &z_rs, const CVector &zss_self, const CMatrix &zss_mutual,
                    const RisLoadSequence &loads);
    CMatrix build_B_uncoupled(const CVector &z_rs, const CVector &zss_self, const RisLoadSequence &loads);

    /// D = [[Re B, -Im B], [Im B, Re B]] with a flag telling whether B saw Z_SS^mutual.
    struct RealifiedModel
    {
        RMatrix D;
        bool includes_mutual_coupling = false;

        std::size_t num_observations() const { return static_cast<std::size_t>(D.rows()); }
        std::size_t num_parameters() const { return static_cast<std::size_t>(D.cols()); }
    };

    RealifiedModel realify(const CMatrix &B, bool includes_mutual_coupling);
    RVector realify_vec(const CVector &v);
    CVector complexify_vec(const RVector &x);

    /// Realified unknown channel x = [Re z_ST; Im z_ST].
    struct ChannelVector
    {
        RVector x;

        static ChannelVector from_complex(const CVector &z_st) { return {realify_vec(z_st)}; }
        CVector complexify() const { return complexify_vec(x); }
    };

    /// r = sqrt(P_T) D x + w, w ~ N(0, sigma2/2 I). `noiseless` drops w and
    /// leaves the stream untouched. Throws InvalidArgument for P_T <= 0 or sigma2 <= 0.
    RVector generate_observations(const RealifiedModel &model, const RVector &x, double p_t, double sigma2, Rng &rng,
                                  bool noiseless = false);

    /// Row-major CSV dump of B with `re,im` column pairs.
    std::string model_to_csv(const CMatrix &B);
}

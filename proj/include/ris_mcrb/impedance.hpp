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

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "ris_mcrb/geometry.hpp"
#include "ris_mcrb/types.hpp"

namespace ris_mcrb
{
    /*!
     * Controls the tensor-product Gauss-Legendre rule used for the impedance
     * double integral. Each axis is split at the dipole feed point (the kink of
     * the sinusoidal current), giving four smooth panels. The order starts at
     * `base_order` nodes per axis per panel and is multiplied by
     * `refinement_factor` until two successive estimates agree to
     * `rel_tolerance`, at most `max_refinements` times.
     */
    struct QuadratureSpec
    {
        int base_order = 16;
        int refinement_factor = 2;
        double rel_tolerance = 1e-9;
        int max_refinements = 6;

        /// Throws InvalidArgument unless base_order >= 8, refinement_factor >= 2,
        /// 1e-14 <= rel_tolerance <= 1e-3 and max_refinements >= 1.
        void validate() const;
    };

    struct Impedance
    {
        cdouble value;          // ohm
        double error_estimate;  // ohm, absolute
        int order;              // nodes per axis per panel of the accepted estimate
    };

    /// R(xi, z) = sqrt(rho1^2 + (z - xi + rho2)^2). Throws DegenerateGeometry when R == 0.
    double kernel_distance(double xi, double z, double rho1, double rho2);

    /// Gauss-Legendre nodes and weights on [-1, 1], ascending. Cached per order.
    struct GaussLegendreRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };
    const GaussLegendreRule &gauss_legendre(int order);

    /*!
     * Geometry of one impedance integral. For distinct radiators rho1 is the
     * horizontal distance and rho2 = z_p - z_q; the self term uses rho1 = wire
     * radius and rho2 = 0. Radiator p spans xi in [-h_p, h_p], q spans z in
     * [-h_q, h_q].
     */
    struct PairGeometry
    {
        double rho1;
        double rho2;
        double half_length_p;
        double half_length_q;
    };

    /// Geometry of the pair (p, q); identical radiators give the self-term branch.
    PairGeometry pair_geometry(const Radiator &p, const Radiator &q);

    /// The double integral for an explicit geometry, with adaptive order doubling.
    Impedance integrate_impedance(const PairGeometry &geometry, const PhysicalConstants &constants,
                                  const QuadratureSpec &quad = {});

    /// Integral at one fixed order (no refinement). Exposed for convergence checks.
    cdouble integrate_impedance_fixed(const PairGeometry &geometry, const PhysicalConstants &constants, int order);

    /// Z_qp between two parallel z-oriented thin wires (self impedance when p == q).
    Impedance mutual_impedance(const Radiator &p, const Radiator &q, const PhysicalConstants &constants,
                               const QuadratureSpec &quad = {});

    /*!
     * Memo of impedance integrals keyed on the geometry. Pairs of a regular grid
     * repeat the same (rho1, rho2) many times; the key rounds each length to a
     * 42-bit mantissa so that equivalent lattice offsets hit the same entry.
     * Safe to share between threads.
     */
    class ImpedanceCache
    {
    public:
        using Key = std::array<std::uint64_t, 4>;

        static Key key_of(const PairGeometry &geometry);

        bool lookup(const Key &key, Impedance &out) const;
        void store(const Key &key, const Impedance &value);
        std::size_t size() const;
        void clear();

    private:
        mutable std::mutex mutex_;
        std::map<Key, Impedance> entries_;
    };

    struct ImpedanceMatrices
    {
        CVector self;    // diagonal of Z_SS^self
        CMatrix mutual;  // Z_SS^mutual, zero diagonal, complex symmetric
    };

    /// Self and mutual impedances among `elements`. Each unordered pair is
    /// integrated once and mirrored; `cache` may be null.
    ImpedanceMatrices impedance_matrix(std::span<const Radiator> elements, const PhysicalConstants &constants,
                                       const QuadratureSpec &quad = {}, ImpedanceCache *cache = nullptr);

    /// Entry n = mutual_impedance(elements[n], antenna).
    CVector coupling_vector(const Radiator &antenna, std::span<const Radiator> elements,
                            const PhysicalConstants &constants, const QuadratureSpec &quad = {},
                            ImpedanceCache *cache = nullptr);

    /// z_ST, z_RS and Z_SS split into self and mutual parts.
    struct ImpedanceSet
    {
        CVector z_st;
        CVector z_rs;
        CVector zss_self;
        CMatrix zss_mutual;

        std::size_t size() const { return static_cast<std::size_t>(z_st.size()); }
        CMatrix zss_total() const;
    };
}

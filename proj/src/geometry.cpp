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

#include "ris_mcrb/geometry.hpp"

#include <cmath>
#include <string>

#include "ris_mcrb/errors.hpp"

namespace ris_mcrb
{
    PhysicalConstants derive_constants(double frequency_hz)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw InvalidArgument("frequency must be positive, got " + std::to_string(frequency_hz));

        PhysicalConstants c{};
        c.frequency = frequency_hz;
        c.wavelength = speed_of_light / frequency_hz;
        c.wavenumber = 2.0 * pi / c.wavelength;
        c.mu0 = 4.0e-7 * pi;
        c.eps0 = 1.0 / (c.mu0 * speed_of_light * speed_of_light);
        c.intrinsic_impedance = std::sqrt(c.mu0 / c.eps0);
        return c;
    }

    void Radiator::validate() const
    {
        if (!position.allFinite())
            throw InvalidArgument("radiator position must be finite");
        if (!(half_length > 0.0) || !(wire_radius > 0.0))
            throw InvalidArgument("radiator half length and wire radius must be positive");
        if (!(wire_radius < half_length))
            throw InvalidArgument("radiator wire radius must be smaller than its half length");
    }

    RisGrid build_ris_grid(std::size_t n1, std::size_t n2, double spacing, const Vec3 &center)
    {
        if (n1 == 0 || n2 == 0)
            throw InvalidArgument("RIS grid needs at least one element per axis");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw InvalidArgument("RIS element spacing must be positive");

        RisGrid grid;
        grid.n1 = n1;
        grid.n2 = n2;
        grid.spacing = spacing;
        grid.center = center;
        grid.element_positions.reserve(n1 * n2);

        const double off1 = 0.5 * static_cast<double>(n1 - 1);
        const double off2 = 0.5 * static_cast<double>(n2 - 1);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                grid.element_positions.emplace_back(center.x() + (static_cast<double>(i) - off1) * spacing,
                                                    center.y() + (static_cast<double>(j) - off2) * spacing,
                                                    center.z());
        return grid;
    }

    std::vector<Radiator> grid_radiators(const RisGrid &grid, double half_length, double wire_radius)
    {
        std::vector<Radiator> out;
        out.reserve(grid.size());
        for (const auto &p : grid.element_positions)
            out.push_back(Radiator{p, half_length, wire_radius});
        return out;
    }
}

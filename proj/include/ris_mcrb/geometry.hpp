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

#include <cstddef>
#include <vector>

#include "ris_mcrb/types.hpp"

namespace ris_mcrb
{
    inline constexpr double speed_of_light = 299792458.0;  // m/s
    inline constexpr double pi = 3.14159265358979323846;

    /// Free-space constants at one carrier frequency.
    struct PhysicalConstants
    {
        double frequency;            // Hz
        double wavelength;           // m
        double wavenumber;           // rad/m
        double intrinsic_impedance;  // ohm
        double mu0;                  // H/m
        double eps0;                 // F/m

        double angular_frequency() const { return 2.0 * pi * frequency; }
    };

    /// Throws InvalidArgument unless frequency > 0 and finite.
    PhysicalConstants derive_constants(double frequency_hz);

    /// Cylindrical thin-wire dipole with its axis along global z.
    struct Radiator
    {
        Vec3 position = Vec3::Zero();  // center, m
        double half_length = 0.0;      // m
        double wire_radius = 0.0;      // m

        /// Throws InvalidArgument unless 0 < wire_radius < half_length.
        void validate() const;
    };

    /// Regular n1 x n2 grid in the x-y plane, pitch d, centered on `center`.
    /// Element (i, j) has index i * n2 + j.
    struct RisGrid
    {
        std::size_t n1 = 0;
        std::size_t n2 = 0;
        double spacing = 0.0;
        Vec3 center = Vec3::Zero();
        std::vector<Vec3> element_positions;

        std::size_t size() const { return element_positions.size(); }
    };

    RisGrid build_ris_grid(std::size_t n1, std::size_t n2, double spacing, const Vec3 &center);

    /// One radiator per grid element, all sharing (half_length, wire_radius).
    std::vector<Radiator> grid_radiators(const RisGrid &grid, double half_length, double wire_radius);
}

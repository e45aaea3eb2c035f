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
#include <random>
#include <string_view>

namespace ris_mcrb
{
    using Rng = std::mt19937_64;

    /*!
     * Named, independent random substreams derived from one master seed.
     *
     * The seed of stream `name` is splitmix64(master ^ fnv1a64(name)). Streams in
     * use: "loads" for the RIS load sequence and "noise/<p_t_dbm>/<trial>" for the
     * Monte-Carlo observation noise, with p_t_dbm printed to 17 significant digits.
     */
    class SeedTree
    {
    public:
        explicit SeedTree(std::uint64_t master) : master_(master) {}

        std::uint64_t master() const { return master_; }
        std::uint64_t seed_for(std::string_view name) const;
        Rng stream(std::string_view name) const { return Rng(seed_for(name)); }

    private:
        std::uint64_t master_;
    };

    std::uint64_t splitmix64(std::uint64_t x);
    std::uint64_t fnv1a64(std::string_view bytes);
}

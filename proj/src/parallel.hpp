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
#include <exception>
#include <vector>

namespace ris_mcrb::detail
{
    /// Runs fn(i) for i in [0, count), in parallel when OpenMP is available.
    /// Every index runs; the exception of the lowest failing index is rethrown.
    template <typename Fn>
    void parallel_for(std::size_t count, Fn &&fn)
    {
        std::vector<std::exception_ptr> errors(count);
        const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < n; ++i)
        {
            try
            {
                fn(static_cast<std::size_t>(i));
            }
            catch (...)
            {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}

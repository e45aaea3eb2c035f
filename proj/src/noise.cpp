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

#include "ris_mcrb/noise.hpp"

#include <cmath>

#include "ris_mcrb/errors.hpp"

double ris_mcrb::noise_variance(const NoiseModel &noise)
{
    if (!(noise.bandwidth_hz > 0.0) || !std::isfinite(noise.bandwidth_hz))
        throw InvalidArgument("noise bandwidth must be positive");
    const double psd_w_hz = std::pow(10.0, (noise.psd_dbm_hz - 30.0) / 10.0);
    const double nf = std::pow(10.0, noise.noise_figure_db / 10.0);
    return psd_w_hz * nf * noise.bandwidth_hz;
}

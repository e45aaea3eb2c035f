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

#include <cmath>

namespace ris_mcrb
{
    /// Receiver thermal noise: PSD in dBm/Hz, noise figure in dB, bandwidth in Hz.
    struct NoiseModel
    {
        double psd_dbm_hz = -173.855;
        double noise_figure_db = 10.0;
        double bandwidth_hz = 1.0;
    };

    /// sigma^2 = 10^((psd - 30)/10) * 10^(nf/10) * bandwidth, in watts.
    /// Throws InvalidArgument for a non-positive bandwidth.
    double noise_variance(const NoiseModel &noise);

    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
}

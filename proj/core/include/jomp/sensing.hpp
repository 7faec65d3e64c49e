// SPDX-License-Identifier: Apache-2.0
//
// jomp: joint compressive CSIT estimation for FDD multi-user massive MIMO
// Copyright (C) 2026 The jomp authors
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

#ifndef JOMP_SENSING_HPP
#define JOMP_SENSING_HPP

#include <cstddef>
#include <vector>

#include "jomp/channel.hpp"
#include "jomp/numeric.hpp"
#include "jomp/rng.hpp"

namespace jomp {

struct PilotBlock {
    ComplexMatrix pilots;       // X, M x T
    ComplexMatrix angular;      // X_a, M x T, entries +-sqrt(P/M)
    ComplexMatrix measurement;  // Xbar = sqrt(M/(PT)) X^H A_T, T x M
    double power = 0.0;         // P, linear per-slot transmit SNR
    std::size_t slots = 0;      // T
};

struct MeasurementSet {
    std::vector<ComplexMatrix> raw;          // Y_i, N x T
    std::vector<ComplexMatrix> transformed;  // Ybar_i, T x N
    double noise_variance = 0.0;             // variance of Nbar entries, M/(PT)
};

double db_to_linear(double db) noexcept;

// Rademacher pilots X = A_T X_a.
PilotBlock generate_pilots(std::size_t num_tx, std::size_t slots, double power,
                           const ComplexMatrix& tx_basis, SeededRng& rng);

// Y = H X + noise with i.i.d. CN(0,1) noise; `noiseless` drops the noise term.
ComplexMatrix observe(const ComplexMatrix& channel, const ComplexMatrix& pilots, SeededRng& rng,
                      bool noiseless = false);

// Ybar = sqrt(M/(PT)) Y^H A_R.
ComplexMatrix cs_transform(const ComplexMatrix& observation, const ComplexMatrix& rx_basis,
                           std::size_t num_tx, double power, std::size_t slots);

// Observes and transforms every user's channel. Users draw noise from `rng` in order.
MeasurementSet measure(const AngularChannelSet& channels, const PilotBlock& pilots, SeededRng& rng,
                       bool noiseless = false);

} // namespace jomp

#endif

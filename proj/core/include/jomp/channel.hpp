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

#ifndef JOMP_CHANNEL_HPP
#define JOMP_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "jomp/numeric.hpp"
#include "jomp/rng.hpp"

namespace jomp {

// Statistical sparsity bounds: the common support has at least `common_min`
// entries and every individual support at most `individual_max`.
struct SparsityStats {
    std::size_t common_min = 0;      // s_c
    std::size_t individual_max = 1;  // s
    double epsilon = 0.0;

    // Throws InvalidConfig unless s_c <= s, 1 <= s <= M/2 and epsilon in [0, 1).
    void validate(std::size_t num_tx) const;
};

struct CongestionStats {
    std::size_t max_users = 0;  // K_o
    double ratio = 0.0;         // gamma = K_o / K
};

struct JointSupport {
    IndexSet common;                  // Omega_c
    std::vector<IndexSet> individual; // Omega_i, one per user
    std::size_t max_users = 0;        // K_o
    double ratio = 0.0;               // gamma

    std::size_t num_users() const noexcept { return individual.size(); }
};

struct AngularChannelSet {
    std::vector<ComplexMatrix> angular;   // H_i^w, N x M
    std::vector<ComplexMatrix> antenna;   // H_i = A_R H_i^w A_T^H
    ComplexMatrix rx_basis;               // A_R, N x N
    ComplexMatrix tx_basis;               // A_T, M x M
    JointSupport support;
};

// K_o = max over j outside Omega_c of the number of users whose support holds j.
CongestionStats congestion_stats(const JointSupport& support);

// Draws supports following the evaluation protocol: |Omega_c| ~ U(s_c, min(s_c+2, s)),
// |Omega_i| ~ U(max(s-2, |Omega_c|, 1), s), extras uniform outside Omega_c, and the
// intersection of all Omega_i equal to Omega_c exactly.
JointSupport sample_supports(std::size_t num_tx, std::size_t num_users, const SparsityStats& stats,
                             SeededRng& rng);

// CN(0,1) entries on every support column, zero elsewhere; antenna domain via
// the unitary DFT bases.
AngularChannelSet generate_channels(const JointSupport& support, std::size_t num_tx,
                                    std::size_t num_rx, SeededRng& rng);

ComplexMatrix angular_to_antenna(const ComplexMatrix& angular, const ComplexMatrix& rx_basis,
                                 const ComplexMatrix& tx_basis);

} // namespace jomp

#endif

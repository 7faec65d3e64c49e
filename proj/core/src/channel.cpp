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

#include "jomp/channel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "jomp/error.hpp"

namespace jomp {

namespace {

constexpr int kMaxSupportRedraws = 1000;

std::size_t uniform_count(SeededRng& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> dist(lo, hi);
    return dist(rng);
}

// k distinct entries of `pool`, uniformly (partial Fisher-Yates).
std::vector<std::size_t> draw_subset(std::vector<std::size_t> pool, std::size_t k, SeededRng& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    return pool;
}

} // namespace

void SparsityStats::validate(std::size_t num_tx) const {
    require(common_min <= individual_max, "sparsity: s_c must not exceed s");
    require(individual_max >= 1, "sparsity: s must be >= 1");
    require(2 * individual_max <= num_tx, "sparsity: s must be <= M/2");
    require(epsilon >= 0.0 && epsilon < 1.0, "sparsity: epsilon must lie in [0, 1)");
}

CongestionStats congestion_stats(const JointSupport& support) {
    CongestionStats out;
    const std::size_t users = support.num_users();
    if (users == 0)
        return out;
    std::size_t dim = 0;
    for (const auto& s : support.individual)
        if (!s.empty())
            dim = std::max(dim, s.values().back() + 1);
    std::vector<std::size_t> count(dim, 0);
    for (const auto& s : support.individual)
        for (auto j : s)
            ++count[j];
    for (std::size_t j = 0; j < dim; ++j)
        if (!support.common.contains(j))
            out.max_users = std::max(out.max_users, count[j]);
    out.ratio = static_cast<double>(out.max_users) / static_cast<double>(users);
    return out;
}

JointSupport sample_supports(std::size_t num_tx, std::size_t num_users, const SparsityStats& stats,
                             SeededRng& rng) {
    stats.validate(num_tx);
    require(num_users >= 1, "sample_supports: K must be >= 1");

    const std::size_t s = stats.individual_max;
    const std::size_t common_size =
        uniform_count(rng, stats.common_min, std::min(stats.common_min + 2, s));

    std::vector<std::size_t> all(num_tx);
    std::iota(all.begin(), all.end(), std::size_t{0});
    JointSupport out;
    out.common = IndexSet(draw_subset(all, common_size, rng));

    std::vector<std::size_t> outside;
    outside.reserve(num_tx - common_size);
    for (auto j : all)
        if (!out.common.contains(j))
            outside.push_back(j);

    const std::size_t lo = std::max({s >= 2 ? s - 2 : std::size_t{0}, common_size, std::size_t{1}});
    std::vector<std::size_t> sizes(num_users);
    for (auto& n : sizes)
        n = uniform_count(rng, lo, s);

    if (num_users == 1) {
        // A single user's support is its own intersection.
        IndexSet only = out.common.set_union(IndexSet(draw_subset(outside, sizes[0] - common_size, rng)));
        out.common = only;
        out.individual = {only};
    } else {
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt == kMaxSupportRedraws)
                fail(ErrorCode::SamplingExhausted,
                     "sample_supports: could not realize intersection == common support in " +
                         std::to_string(kMaxSupportRedraws) + " draws");
            out.individual.clear();
            for (std::size_t i = 0; i < num_users; ++i)
                out.individual.push_back(
                    out.common.set_union(IndexSet(draw_subset(outside, sizes[i] - common_size, rng))));
            IndexSet meet = out.individual.front();
            for (std::size_t i = 1; i < num_users; ++i)
                meet = meet.intersection(out.individual[i]);
            if (meet == out.common)
                break;
        }
    }

    const auto cong = congestion_stats(out);
    out.max_users = cong.max_users;
    out.ratio = cong.ratio;
    return out;
}

ComplexMatrix angular_to_antenna(const ComplexMatrix& angular, const ComplexMatrix& rx_basis,
                                 const ComplexMatrix& tx_basis) {
    return rx_basis * angular * tx_basis.adjoint();
}

AngularChannelSet generate_channels(const JointSupport& support, std::size_t num_tx,
                                    std::size_t num_rx, SeededRng& rng) {
    require(num_tx >= 1 && num_rx >= 1, "generate_channels: M and N must be >= 1");
    require(support.num_users() >= 1, "generate_channels: no users");

    AngularChannelSet out;
    out.support = support;
    out.rx_basis = dft_unitary(num_rx);
    out.tx_basis = dft_unitary(num_tx);

    const auto rows = static_cast<Eigen::Index>(num_rx);
    const auto cols = static_cast<Eigen::Index>(num_tx);
    for (const auto& omega : support.individual) {
        require(!omega.empty(), "generate_channels: every user needs a nonempty support");
        require(omega.all_below(num_tx), "generate_channels: support index out of range");
        ComplexMatrix hw = ComplexMatrix::Zero(rows, cols);
        for (auto j : omega)
            for (Eigen::Index r = 0; r < rows; ++r)
                hw(r, static_cast<Eigen::Index>(j)) = complex_gaussian(rng);
        out.antenna.push_back(angular_to_antenna(hw, out.rx_basis, out.tx_basis));
        out.angular.push_back(std::move(hw));
    }
    return out;
}

} // namespace jomp

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

#include <doctest.h>

#include <set>

#include "jomp/channel.hpp"
#include "jomp/error.hpp"

using namespace jomp;

namespace {

IndexSet brute_intersection(const std::vector<IndexSet>& sets, std::size_t dim) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < dim; ++j) {
        bool all = true;
        for (const auto& s : sets)
            all = all && std::find(s.begin(), s.end(), j) != s.end();
        if (all)
            out.push_back(j);
    }
    return IndexSet(out);
}

std::size_t brute_max_users(const JointSupport& sup, std::size_t dim) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < dim; ++j) {
        if (std::find(sup.common.begin(), sup.common.end(), j) != sup.common.end())
            continue;
        std::size_t c = 0;
        for (const auto& s : sup.individual)
            for (auto v : s)
                c += v == j ? 1 : 0;
        best = std::max(best, c);
    }
    return best;
}

} // namespace

TEST_CASE("sample_supports at the reference operating point") {
    const SparsityStats stats{9, 17, 0.0};
    for (std::uint64_t t = 0; t < 50; ++t) {
        auto rng = make_stream(3, 0, t, StreamPurpose::Support);
        const JointSupport sup = sample_supports(160, 40, stats, rng);
        REQUIRE(sup.num_users() == 40);
        CHECK(sup.common.size() >= 9);
        CHECK(sup.common.size() <= 11);
        for (const auto& s : sup.individual) {
            CHECK(s.size() >= 15);
            CHECK(s.size() <= 17);
            CHECK(sup.common.is_subset_of(s));
            CHECK(s.all_below(160));
        }
        CHECK(brute_intersection(sup.individual, 160) == sup.common);
        CHECK(sup.max_users == brute_max_users(sup, 160));
        CHECK(sup.ratio == doctest::Approx(static_cast<double>(sup.max_users) / 40.0));
        CHECK(sup.ratio < 1.0);
    }
}

TEST_CASE("sample_supports with a fully shared support") {
    auto rng = make_stream(4, 0, 0, StreamPurpose::Support);
    const JointSupport sup = sample_supports(32, 6, SparsityStats{4, 4, 0.0}, rng);
    CHECK(sup.common.size() == 4);
    for (const auto& s : sup.individual)
        CHECK(s == sup.common);
    CHECK(sup.max_users == 0);
    CHECK(sup.ratio == 0.0);
}

TEST_CASE("sample_supports keeps the intersection exact for two users") {
    for (std::uint64_t t = 0; t < 200; ++t) {
        auto rng = make_stream(5, 0, t, StreamPurpose::Support);
        const JointSupport sup = sample_supports(16, 2, SparsityStats{2, 4, 0.0}, rng);
        CHECK(brute_intersection(sup.individual, 16) == sup.common);
    }
}

TEST_CASE("sample_supports validates its configuration") {
    auto rng = make_stream(6, 0, 0, StreamPurpose::Support);
    CHECK_THROWS_AS(sample_supports(32, 4, SparsityStats{5, 4, 0.0}, rng), Error);
    CHECK_THROWS_AS(sample_supports(32, 4, SparsityStats{2, 17, 0.0}, rng), Error);
    CHECK_THROWS_AS(sample_supports(32, 0, SparsityStats{2, 4, 0.0}, rng), Error);
    CHECK_THROWS_AS(sample_supports(32, 4, SparsityStats{2, 4, 1.0}, rng), Error);
}

TEST_CASE("sample_supports is deterministic for a fixed stream") {
    auto a = make_stream(7, 1, 2, StreamPurpose::Support);
    auto b = make_stream(7, 1, 2, StreamPurpose::Support);
    const JointSupport x = sample_supports(64, 16, SparsityStats{3, 8, 0.0}, a);
    const JointSupport y = sample_supports(64, 16, SparsityStats{3, 8, 0.0}, b);
    CHECK(x.common == y.common);
    CHECK(x.individual == y.individual);
}

TEST_CASE("congestion_stats examples") {
    JointSupport sup;
    sup.common = IndexSet{0};
    sup.individual = {IndexSet{0, 1}, IndexSet{0, 1}, IndexSet{0, 2}};
    const CongestionStats c = congestion_stats(sup);
    CHECK(c.max_users == 2);
    CHECK(c.ratio == doctest::Approx(2.0 / 3.0));

    JointSupport shared;
    shared.common = IndexSet{1, 2};
    shared.individual = {IndexSet{1, 2}, IndexSet{1, 2}};
    CHECK(congestion_stats(shared).max_users == 0);
    CHECK(congestion_stats(shared).ratio == 0.0);

    for (std::uint64_t t = 0; t < 20; ++t) {
        auto rng = make_stream(8, 0, t, StreamPurpose::Support);
        const JointSupport r = sample_supports(64, 16, SparsityStats{2, 8, 0.0}, rng);
        CHECK(congestion_stats(r).max_users == brute_max_users(r, 64));
    }
}

TEST_CASE("generate_channels places CN(0,1) entries on the support only") {
    auto srng = make_stream(9, 0, 0, StreamPurpose::Support);
    auto crng = make_stream(9, 0, 0, StreamPurpose::Channel);
    const JointSupport sup = sample_supports(48, 5, SparsityStats{2, 6, 0.0}, srng);
    const AngularChannelSet ch = generate_channels(sup, 48, 3, crng);
    REQUIRE(ch.angular.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto& hw = ch.angular[i];
        CHECK(hw.rows() == 3);
        CHECK(hw.cols() == 48);
        for (Eigen::Index j = 0; j < 48; ++j) {
            const bool on = sup.individual[i].contains(static_cast<std::size_t>(j));
            for (Eigen::Index r = 0; r < 3; ++r)
                CHECK((hw(r, j) != Complex(0.0, 0.0)) == on);
        }
        const ComplexMatrix ref = dft_unitary(3) * hw * dft_unitary(48).adjoint();
        CHECK((ch.antenna[i] - ref).norm() <= 1e-10 * ref.norm());
        CHECK(std::abs(ch.antenna[i].norm() - hw.norm()) <= 1e-10 * hw.norm());
    }
}

TEST_CASE("generate_channels single-path example and errors") {
    JointSupport sup;
    sup.common = IndexSet{0};
    sup.individual = {IndexSet{0}};
    auto rng = make_stream(10, 0, 0, StreamPurpose::Channel);
    const AngularChannelSet ch = generate_channels(sup, 8, 1, rng);
    CHECK((ch.angular[0].array() != Complex(0.0, 0.0)).count() == 1);
    CHECK(std::abs(ch.antenna[0].norm() - ch.angular[0].norm()) < 1e-12);

    JointSupport empty;
    empty.individual = {IndexSet{}};
    CHECK_THROWS_AS(generate_channels(empty, 8, 1, rng), Error);
}

TEST_CASE("channel entries have unit second moment") {
    JointSupport sup;
    sup.common = IndexSet{3, 9, 17, 30};
    sup.individual = {sup.common};
    double acc = 0.0;
    double acc_re = 0.0;
    std::size_t count = 0;
    for (std::uint64_t t = 0; t < 10000; ++t) {
        auto rng = make_stream(11, 0, t, StreamPurpose::Channel);
        const AngularChannelSet ch = generate_channels(sup, 32, 2, rng);
        for (auto j : sup.common)
            for (Eigen::Index r = 0; r < 2; ++r) {
                const Complex h = ch.angular[0](r, static_cast<Eigen::Index>(j));
                acc += std::norm(h);
                acc_re += h.real() * h.real();
                ++count;
            }
    }
    CHECK(acc / static_cast<double>(count) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(acc_re / static_cast<double>(count) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("streams are keyed, not ordered") {
    auto a1 = make_stream(1, 2, 3, StreamPurpose::Noise);
    auto b = make_stream(1, 2, 4, StreamPurpose::Noise);
    auto a2 = make_stream(1, 2, 3, StreamPurpose::Noise);
    auto c = make_stream(1, 2, 3, StreamPurpose::Pilots);
    const auto x = a1();
    CHECK(x == a2());
    CHECK(x != b());
    CHECK(x != c());
}

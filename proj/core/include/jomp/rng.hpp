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

#ifndef JOMP_RNG_HPP
#define JOMP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "jomp/numeric.hpp"

namespace jomp {

using SeededRng = std::mt19937_64;

// What a random stream is used for; part of the stream key so that, e.g., the
// pilots of trial 7 never share bits with its noise.
enum class StreamPurpose : std::uint64_t {
    Support = 1,
    Channel = 2,
    Pilots = 3,
    Noise = 4,
    Ric = 5,
    Misc = 6,
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-style stream derivation: the generator for a (seed, key...) tuple
// depends only on the tuple, never on the order in which streams are requested.
inline SeededRng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
    std::uint64_t h = mix64(seed);
    for (auto k : key)
        h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(mix64(h)), static_cast<std::uint32_t>(mix64(h) >> 32)};
    return SeededRng(seq);
}

inline SeededRng make_stream(std::uint64_t seed, std::uint64_t sweep_index, std::uint64_t trial,
                             StreamPurpose purpose) {
    return make_stream(seed, {sweep_index, trial, static_cast<std::uint64_t>(purpose)});
}

// Circularly-symmetric CN(0, variance): real and imaginary parts N(0, variance/2).
inline Complex complex_gaussian(SeededRng& rng, double variance = 1.0) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

inline ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, SeededRng& rng,
                                             double variance = 1.0) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = complex_gaussian(rng, variance);
    return m;
}

} // namespace jomp

#endif

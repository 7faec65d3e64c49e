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

#include <benchmark/benchmark.h>

#include <cstddef>

#include "jomp/channel.hpp"
#include "jomp/recovery.hpp"
#include "jomp/rng.hpp"
#include "jomp/sensing.hpp"

namespace {

using namespace jomp;

// Table I operating point with M varied.
constexpr std::size_t kRx = 2;
constexpr std::size_t kUsers = 40;
constexpr std::size_t kSlots = 45;
constexpr double kPowerDb = 28.0;
const SparsityStats kStats{9, 17, 0.0};

struct Instance {
    PilotBlock pilots;
    MeasurementSet meas;
    double power = 0.0;
};

Instance make_instance(std::size_t num_tx) {
    auto srng = make_stream(1, 0, 0, StreamPurpose::Support);
    auto crng = make_stream(1, 0, 0, StreamPurpose::Channel);
    auto prng = make_stream(1, 0, 0, StreamPurpose::Pilots);
    auto nrng = make_stream(1, 0, 0, StreamPurpose::Noise);
    Instance in;
    in.power = db_to_linear(kPowerDb);
    const JointSupport sup = sample_supports(num_tx, kUsers, kStats, srng);
    const AngularChannelSet ch = generate_channels(sup, num_tx, kRx, crng);
    in.pilots = generate_pilots(num_tx, kSlots, in.power, ch.tx_basis, prng);
    in.meas = measure(ch, in.pilots, nrng);
    return in;
}

void BM_Jomp(benchmark::State& state) {
    const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
    JompConfig cfg;
    cfg.stats = kStats;
    for (auto _ : state) {
        RecoveryReport rep = jomp::jomp(in.meas.transformed, in.pilots.measurement, cfg, in.power);
        benchmark::DoNotOptimize(rep.angular.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kUsers));
}

void BM_Somp(benchmark::State& state) {
    const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
    const double stop = noise_floor_energy(2.0, kRx, static_cast<std::size_t>(state.range(0)), in.power);
    for (auto _ : state) {
        for (const auto& y : in.meas.transformed) {
            SparseEstimate est = somp_single(y, in.pilots.measurement, kStats.individual_max, stop);
            benchmark::DoNotOptimize(est.angular.data());
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kUsers));
}

void BM_Omp(benchmark::State& state) {
    const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
    const double stop = noise_floor_energy(2.0, kRx, static_cast<std::size_t>(state.range(0)), in.power);
    for (auto _ : state) {
        for (const auto& y : in.meas.transformed) {
            SparseEstimate est = omp_single(y, in.pilots.measurement, kStats.individual_max, stop);
            benchmark::DoNotOptimize(est.angular.data());
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kUsers));
}

void BM_Ls(benchmark::State& state) {
    const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
    const LsEstimator ls(in.pilots.pilots);
    for (auto _ : state) {
        for (const auto& y : in.meas.raw) {
            ComplexMatrix est = ls.apply(y);
            benchmark::DoNotOptimize(est.data());
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kUsers));
}

void BM_LsPseudoInverse(benchmark::State& state) {
    const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        LsEstimator ls(in.pilots.pilots);
        benchmark::DoNotOptimize(&ls);
    }
}

} // namespace

BENCHMARK(BM_Jomp)->Arg(60)->Arg(120)->Arg(180)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Somp)->Arg(60)->Arg(120)->Arg(180)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Omp)->Arg(60)->Arg(120)->Arg(180)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Ls)->Arg(60)->Arg(120)->Arg(180)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LsPseudoInverse)->Arg(60)->Arg(120)->Arg(180)->Unit(benchmark::kMicrosecond);

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

#include "jomp/bounds.hpp"
#include "jomp/rng.hpp"
#include "jomp/sensing.hpp"

namespace {

using namespace jomp;

BoundInputs reference_inputs() {
    BoundInputs in;
    in.delta_1 = 0.0;
    in.delta_s = 0.05;
    in.delta_s1 = 0.06;
    in.delta_2s = 0.1;
    in.num_tx = 160;
    in.num_rx = 2;
    in.slots = 45;
    in.num_users = 40;
    in.s = 17;
    in.s_c = 9;
    in.power = 1e5;
    in.gamma = 0.25;
    return in;
}

void BM_EvaluateBounds(benchmark::State& state) {
    BoundInputs in = reference_inputs();
    in.num_users = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        BoundOutputs out = evaluate_bounds(in);
        benchmark::DoNotOptimize(&out);
    }
}

void BM_LogBinomialTail(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(log_binomial_lower_tail(k, k / 2, 0.2));
}

void BM_RicEstimate(benchmark::State& state) {
    auto prng = make_stream(3, 0, 0, StreamPurpose::Pilots);
    const ComplexMatrix basis = dft_unitary(160);
    const PilotBlock pb = generate_pilots(160, 45, 1e3, basis, prng);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto rng = make_stream(3, 0, 0, StreamPurpose::Ric);
        RicEstimate r = ric_estimate(pb.measurement, k, 200, rng);
        benchmark::DoNotOptimize(&r);
    }
}

} // namespace

BENCHMARK(BM_EvaluateBounds)->Arg(40)->Arg(400)->Arg(4000);
BENCHMARK(BM_LogBinomialTail)->Arg(40)->Arg(4000);
BENCHMARK(BM_RicEstimate)->Arg(2)->Arg(17)->Arg(34)->Unit(benchmark::kMillisecond);

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

#ifndef JOMP_HARNESS_HPP
#define JOMP_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jomp/bounds.hpp"
#include "jomp/channel.hpp"

namespace jomp {

enum class Algorithm { Jomp, Omp, Somp, Ls, Genie };
enum class SweepVariable { T, P_dB, s_c, s, N, M, K };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Algorithm a) noexcept;
std::string_view to_string(SweepVariable v) noexcept;
Algorithm parse_algorithm(std::string_view name);
SweepVariable parse_sweep_variable(std::string_view name);
OutputFormat parse_format(std::string_view name);

struct ExperimentConfig {
    std::size_t M = 160;
    std::size_t N = 2;
    std::size_t K = 40;
    std::size_t T = 45;
    double P_dB = 28.0;
    SparsityStats stats{9, 17, 0.0};
    double eta1 = 0.2;
    double eta2 = 2.0;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    SweepVariable sweep_variable = SweepVariable::T;
    std::vector<double> sweep_values{45.0};
    std::vector<Algorithm> algorithms{Algorithm::Genie, Algorithm::Jomp, Algorithm::Somp, Algorithm::Omp,
                                      Algorithm::Ls};
    bool noiseless = false;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    std::size_t jobs = 0;        // 0: one worker per hardware thread
    bool measure_time = true;    // off: all time columns are 0, making output bit-reproducible
    bool bounds = true;          // attach bound evaluations to J-OMP rows
    std::size_t ric_trials = 200;
    bool fixed_pilots = false;   // reuse trial 0's pilots in every trial of a sweep point

    void validate() const;

    // Copy with the sweep variable set to `value`; validates integrality.
    ExperimentConfig at(double value) const;
};

// Flat `key = value` text, `#` comments. Lists are comma separated.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

inline constexpr std::string_view kEnvPrefix = "JOMPSIM_";

// Every config key may be overridden by an environment variable named
// JOMPSIM_<KEY> with the key upper-cased (e.g. JOMPSIM_TRIALS, JOMPSIM_P_DB).
// `lookup` defaults to std::getenv.
using EnvLookup = std::optional<std::string> (*)(const std::string& name);
ExperimentConfig apply_env_overrides(ExperimentConfig cfg, EnvLookup lookup = nullptr);

ExperimentConfig load_config(const std::string& path, bool use_env = true);

std::vector<std::string> config_keys();

struct ResultRow {
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::Jomp;
    double nmse_mean = 0.0;
    double nmse_stderr = 0.0;
    double nmae_mean = 0.0;
    double nmae_stderr = 0.0;
    double pr_theta_c = 0.0;       // NaN for algorithms without a common-support estimate
    double pr_theta_i_mean = 0.0;
    double time_s_mean = 0.0;      // mean per-user (per-link) seconds
    double bound_pr_c = 0.0;       // NaN unless bounds were attached
    double bound_pr_i = 0.0;
    double bound_nmae = 0.0;
    bool bound_valid = false;
};

struct BoundReport {
    double sweep_value = 0.0;
    bool computed = false;         // false when a required order exceeds T
    double delta_1 = 0.0;
    double delta_s = 0.0;
    double delta_s1 = 0.0;
    double delta_2s = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double p = 0.0;
    double vartheta = 0.0;
    double pr_common = 0.0;
    double pr_common_raw = 0.0;
    double pr_individual = 0.0;
    double pr_individual_raw = 0.0;
    double nmae = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double user_rate = 0.0;
    double high_snr = 0.0;
    bool valid = false;
};

struct ResultTable {
    SweepVariable sweep_variable = SweepVariable::T;
    std::vector<ResultRow> rows;      // sweep-value major, algorithm order of the config
    std::vector<BoundReport> bounds;  // one per sweep value when bounds are enabled

    const ResultRow& row(double sweep_value, Algorithm a) const;
};

// Bitwise-style equality that treats NaN fields as equal to each other.
bool same_table(const ResultTable& a, const ResultTable& b);

// Per-trial raw outcome of one algorithm, averaged over users.
struct TrialOutcome {
    double nmse = 0.0;
    double nmae = 0.0;
    double theta_c = 0.0;   // 0/1, or NaN
    double theta_i = 0.0;   // fraction of users with exact support
    double seconds = 0.0;   // mean per-user seconds
};

// Runs one trial of one sweep point and returns outcomes in the config's algorithm order.
std::vector<TrialOutcome> run_trial(const ExperimentConfig& point, std::size_t sweep_index, std::size_t trial);

// Bound evaluation for one sweep point: RIC estimates from trial 0's Xbar,
// gamma as the largest congestion ratio across the point's trials.
BoundReport evaluate_point_bounds(const ExperimentConfig& point, std::size_t sweep_index);

ResultTable run_sweep(const ExperimentConfig& cfg);

struct TimingTable {
    std::vector<std::size_t> M_values;
    std::vector<Algorithm> algorithms;
    std::vector<std::vector<double>> seconds;  // [algorithm][M index], mean per-link seconds

    double at(Algorithm a, std::size_t M) const;
};

// Always runs single-threaded so timings are not contended.
TimingTable timing_table(const ExperimentConfig& cfg, const std::vector<std::size_t>& M_values);

// LS fastest; OMP no faster than J-OMP and SOMP at every M.
bool timing_ordering_holds(const TimingTable& table);

std::string to_csv(const ResultTable& table);
std::string to_json(const ResultTable& table);
ResultTable table_from_json(std::string_view text);
std::string timing_to_csv(const TimingTable& table);

void emit(const ResultTable& table, OutputFormat format, const std::string& path);

// Machine-readable one-line JSON error description.
std::string error_json(std::string_view code, std::string_view message);

} // namespace jomp

#endif

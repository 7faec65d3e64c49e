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

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jomp/error.hpp"
#include "jomp/harness.hpp"

namespace {

struct RunOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> out;
    std::optional<std::string> format;
    bool noiseless = false;
    std::optional<std::size_t> jobs;
};

jomp::ExperimentConfig apply(const RunOptions& o) {
    jomp::ExperimentConfig cfg = jomp::load_config(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.trials) cfg.trials = *o.trials;
    if (o.out) cfg.output_path = *o.out;
    if (o.format) cfg.format = jomp::parse_format(*o.format);
    if (o.noiseless) cfg.noiseless = true;
    if (o.jobs) cfg.jobs = *o.jobs;
    return cfg;
}

int cmd_run(const RunOptions& o) {
    const auto cfg = apply(o);
    const auto table = jomp::run_sweep(cfg);
    jomp::emit(table, cfg.format, cfg.output_path);
    return 0;
}

int cmd_timing(const RunOptions& o, const std::vector<std::size_t>& m_values) {
    const auto cfg = apply(o);
    const auto table = jomp::timing_table(cfg, m_values);
    std::cout << jomp::timing_to_csv(table);
    if (!jomp::timing_ordering_holds(table))
        std::cerr << jomp::error_json("TimingOrdering", "expected LS fastest and OMP no faster than SOMP") << '\n';
    return 0;
}

int cmd_bounds(const RunOptions& o) {
    const auto cfg = apply(o);
    cfg.validate();
    jomp::ResultTable table;
    table.sweep_variable = cfg.sweep_variable;
    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i)
        table.bounds.push_back(jomp::evaluate_point_bounds(cfg.at(cfg.sweep_values[i]), i));
    std::cout << jomp::to_json(table);
    return 0;
}

void add_common(CLI::App* sub, RunOptions& o) {
    sub->add_option("--config", o.config, "Experiment config file (key = value)")->required();
    sub->add_option("--seed", o.seed, "Override the RNG seed");
    sub->add_option("--trials", o.trials, "Override trials per sweep point");
    sub->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint compressive CSIT estimation simulator"};
    app.require_subcommand(1);
    RunOptions opts;
    std::vector<std::size_t> m_values{60, 120, 180};

    auto* run = app.add_subcommand("run", "Monte Carlo sweep");
    add_common(run, opts);
    run->add_option("--out", opts.out, "Output path (default stdout)");
    run->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--noiseless", opts.noiseless, "Drop the receiver noise");

    auto* timing = app.add_subcommand("timing", "Per-link run time versus M");
    add_common(timing, opts);
    timing->add_option("--m-values", m_values, "Transmit antenna counts")->delimiter(',');

    auto* bounds = app.add_subcommand("bounds", "Bound-only evaluation per sweep point");
    add_common(bounds, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << jomp::error_json("InvalidArguments", e.what()) << '\n';
        return 2;
    }

    try {
        if (*run)
            return cmd_run(opts);
        if (*timing)
            return cmd_timing(opts, m_values);
        return cmd_bounds(opts);
    } catch (const jomp::Error& e) {
        std::cerr << jomp::error_json(jomp::to_string(e.code()), e.what()) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << jomp::error_json("Internal", e.what()) << '\n';
        return 1;
    }
}

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

#include "jomp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "jomp/error.hpp"
#include "jomp/metrics.hpp"
#include "jomp/recovery.hpp"
#include "jomp/sensing.hpp"

namespace jomp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        fail(ErrorCode::InvalidConfig, "config: bad value '" + std::string(text) + "' for key '" +
                                           std::string(key) + "'");
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    fail(ErrorCode::InvalidConfig, "config: bad boolean '" + std::string(text) + "' for key '" +
                                       std::string(key) + "'");
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

const std::vector<std::string>& key_list() {
    static const std::vector<std::string> keys{
        "M",     "N",           "K",         "T",          "P_dB",        "s_c",          "s",
        "epsilon", "eta1",      "eta2",      "trials",     "seed",        "sweep_variable",
        "sweep_values", "algorithms", "noiseless", "output_path", "format", "jobs", "measure_time",
        "bounds", "ric_trials", "fixed_pilots"};
    return keys;
}

void set_key(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "M") cfg.M = parse_number<std::size_t>(key, value);
    else if (key == "N") cfg.N = parse_number<std::size_t>(key, value);
    else if (key == "K") cfg.K = parse_number<std::size_t>(key, value);
    else if (key == "T") cfg.T = parse_number<std::size_t>(key, value);
    else if (key == "P_dB") cfg.P_dB = parse_number<double>(key, value);
    else if (key == "s_c") cfg.stats.common_min = parse_number<std::size_t>(key, value);
    else if (key == "s") cfg.stats.individual_max = parse_number<std::size_t>(key, value);
    else if (key == "epsilon") cfg.stats.epsilon = parse_number<double>(key, value);
    else if (key == "eta1") cfg.eta1 = parse_number<double>(key, value);
    else if (key == "eta2") cfg.eta2 = parse_number<double>(key, value);
    else if (key == "trials") cfg.trials = parse_number<std::size_t>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "sweep_variable") cfg.sweep_variable = parse_sweep_variable(value);
    else if (key == "sweep_values") {
        cfg.sweep_values.clear();
        for (auto item : split_list(value))
            cfg.sweep_values.push_back(parse_number<double>(key, item));
    } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (auto item : split_list(value))
            cfg.algorithms.push_back(parse_algorithm(item));
    } else if (key == "noiseless") cfg.noiseless = parse_bool(key, value);
    else if (key == "output_path") cfg.output_path = std::string(value);
    else if (key == "format") cfg.format = parse_format(value);
    else if (key == "jobs") cfg.jobs = parse_number<std::size_t>(key, value);
    else if (key == "measure_time") cfg.measure_time = parse_bool(key, value);
    else if (key == "bounds") cfg.bounds = parse_bool(key, value);
    else if (key == "ric_trials") cfg.ric_trials = parse_number<std::size_t>(key, value);
    else if (key == "fixed_pilots") cfg.fixed_pilots = parse_bool(key, value);
    else fail(ErrorCode::InvalidConfig, "config: unknown key '" + std::string(key) + "'");
}

std::optional<std::string> getenv_lookup(const std::string& name) {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr)
        return std::nullopt;
    return std::string(v);
}

void validate_point(const ExperimentConfig& c) {
    require(c.M >= 1 && c.N >= 1 && c.K >= 1 && c.T >= 1, "config: M, N, K and T must be >= 1");
    c.stats.validate(c.M);
    require(c.stats.individual_max <= c.T, "config: s must not exceed T");
    require(std::isfinite(c.P_dB), "config: P_dB must be finite");
}

std::size_t as_count(double value, std::string_view name, std::size_t min) {
    require(std::isfinite(value) && value == std::floor(value) && value >= static_cast<double>(min),
            "config: sweep value for " + std::string(name) + " must be an integer >= " + std::to_string(min));
    return static_cast<std::size_t>(value);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Moments {
    double mean = 0.0;
    double stderr_ = 0.0;
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    if (xs.empty())
        return m;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs)
            ss += (x - m.mean) * (x - m.mean);
        const double var = ss / static_cast<double>(xs.size() - 1);
        m.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
    }
    return m;
}

bool same_double(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

nlohmann::json num(double v) {
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

double get_num(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? kNaN : v.get<double>();
}

std::string fmt(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

} // namespace

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::Jomp: return "jomp";
    case Algorithm::Omp: return "omp";
    case Algorithm::Somp: return "somp";
    case Algorithm::Ls: return "ls";
    case Algorithm::Genie: return "genie";
    }
    return "unknown";
}

std::string_view to_string(SweepVariable v) noexcept {
    switch (v) {
    case SweepVariable::T: return "T";
    case SweepVariable::P_dB: return "P_dB";
    case SweepVariable::s_c: return "s_c";
    case SweepVariable::s: return "s";
    case SweepVariable::N: return "N";
    case SweepVariable::M: return "M";
    case SweepVariable::K: return "K";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::Jomp, Algorithm::Omp, Algorithm::Somp, Algorithm::Ls, Algorithm::Genie})
        if (name == to_string(a))
            return a;
    fail(ErrorCode::InvalidConfig, "config: unknown algorithm '" + std::string(name) + "'");
}

SweepVariable parse_sweep_variable(std::string_view name) {
    for (auto v : {SweepVariable::T, SweepVariable::P_dB, SweepVariable::s_c, SweepVariable::s, SweepVariable::N,
                   SweepVariable::M, SweepVariable::K})
        if (name == to_string(v))
            return v;
    fail(ErrorCode::InvalidConfig, "config: unknown sweep variable '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    fail(ErrorCode::InvalidConfig, "config: unknown format '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    require(trials >= 1, "config: trials must be >= 1");
    require(ric_trials >= 1, "config: ric_trials must be >= 1");
    require(!algorithms.empty(), "config: algorithm list is empty");
    for (std::size_t i = 0; i < algorithms.size(); ++i)
        for (std::size_t j = i + 1; j < algorithms.size(); ++j)
            require(algorithms[i] != algorithms[j], "config: duplicate algorithm");
    require(!sweep_values.empty(), "config: sweep_values is empty");
    for (std::size_t i = 1; i < sweep_values.size(); ++i)
        require(sweep_values[i - 1] < sweep_values[i], "config: sweep_values must be strictly increasing");
    require(eta1 > 0.0 && eta1 < 1.0, "config: eta1 must lie in (0, 1)");
    require(eta2 > 1.0, "config: eta2 must exceed 1");
    for (double v : sweep_values)
        validate_point(at(v));
}

ExperimentConfig ExperimentConfig::at(double value) const {
    ExperimentConfig c = *this;
    switch (sweep_variable) {
    case SweepVariable::T: c.T = as_count(value, "T", 1); break;
    case SweepVariable::P_dB:
        require(std::isfinite(value), "config: P_dB sweep value must be finite");
        c.P_dB = value;
        break;
    case SweepVariable::s_c: c.stats.common_min = as_count(value, "s_c", 0); break;
    case SweepVariable::s: c.stats.individual_max = as_count(value, "s", 1); break;
    case SweepVariable::N: c.N = as_count(value, "N", 1); break;
    case SweepVariable::M: c.M = as_count(value, "M", 1); break;
    case SweepVariable::K: c.K = as_count(value, "K", 1); break;
    }
    c.sweep_values = {value};
    return c;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::InvalidConfig, "config: line " + std::to_string(line_no) + " is not key = value");
        set_key(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

ExperimentConfig apply_env_overrides(ExperimentConfig cfg, EnvLookup lookup) {
    if (lookup == nullptr)
        lookup = &getenv_lookup;
    for (const auto& key : key_list())
        if (auto v = lookup(std::string(kEnvPrefix) + upper(key)))
            set_key(cfg, key, trim(*v));
    return cfg;
}

ExperimentConfig load_config(const std::string& path, bool use_env) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::Io, "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg = parse_config(buf.str());
    if (use_env)
        cfg = apply_env_overrides(std::move(cfg));
    return cfg;
}

std::vector<std::string> config_keys() {
    return key_list();
}

const ResultRow& ResultTable::row(double sweep_value, Algorithm a) const {
    for (const auto& r : rows)
        if (r.sweep_value == sweep_value && r.algorithm == a)
            return r;
    fail(ErrorCode::InvalidConfig, "result table: no row for (" + std::to_string(sweep_value) + ", " +
                                       std::string(to_string(a)) + ")");
}

bool same_table(const ResultTable& a, const ResultTable& b) {
    if (a.sweep_variable != b.sweep_variable || a.rows.size() != b.rows.size() ||
        a.bounds.size() != b.bounds.size())
        return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i];
        const auto& y = b.rows[i];
        if (x.algorithm != y.algorithm || x.bound_valid != y.bound_valid)
            return false;
        for (auto [u, v] : {std::pair{x.sweep_value, y.sweep_value}, {x.nmse_mean, y.nmse_mean},
                            {x.nmse_stderr, y.nmse_stderr}, {x.nmae_mean, y.nmae_mean},
                            {x.nmae_stderr, y.nmae_stderr}, {x.pr_theta_c, y.pr_theta_c},
                            {x.pr_theta_i_mean, y.pr_theta_i_mean}, {x.time_s_mean, y.time_s_mean},
                            {x.bound_pr_c, y.bound_pr_c}, {x.bound_pr_i, y.bound_pr_i},
                            {x.bound_nmae, y.bound_nmae}})
            if (!same_double(u, v))
                return false;
    }
    for (std::size_t i = 0; i < a.bounds.size(); ++i) {
        const auto& x = a.bounds[i];
        const auto& y = b.bounds[i];
        if (x.computed != y.computed || x.valid != y.valid)
            return false;
        for (auto [u, v] : {std::pair{x.sweep_value, y.sweep_value}, {x.delta_1, y.delta_1},
                            {x.delta_s, y.delta_s}, {x.delta_s1, y.delta_s1}, {x.delta_2s, y.delta_2s},
                            {x.gamma, y.gamma}, {x.theta, y.theta}, {x.p, y.p}, {x.vartheta, y.vartheta},
                            {x.pr_common, y.pr_common}, {x.pr_common_raw, y.pr_common_raw},
                            {x.pr_individual, y.pr_individual}, {x.pr_individual_raw, y.pr_individual_raw},
                            {x.nmae, y.nmae}, {x.beta1, y.beta1}, {x.beta2, y.beta2},
                            {x.user_rate, y.user_rate}, {x.high_snr, y.high_snr}})
            if (!same_double(u, v))
                return false;
    }
    return true;
}

std::vector<TrialOutcome> run_trial(const ExperimentConfig& point, std::size_t sweep_index, std::size_t trial) {
    const std::uint64_t v = sweep_index;
    auto support_rng = make_stream(point.seed, v, trial, StreamPurpose::Support);
    auto channel_rng = make_stream(point.seed, v, trial, StreamPurpose::Channel);
    auto pilot_rng = make_stream(point.seed, v, point.fixed_pilots ? 0 : trial, StreamPurpose::Pilots);
    auto noise_rng = make_stream(point.seed, v, trial, StreamPurpose::Noise);

    const double power = db_to_linear(point.P_dB);
    const JointSupport support = sample_supports(point.M, point.K, point.stats, support_rng);
    const AngularChannelSet channels = generate_channels(support, point.M, point.N, channel_rng);
    const PilotBlock pilots = generate_pilots(point.M, point.T, power, channels.tx_basis, pilot_rng);
    const MeasurementSet meas = measure(channels, pilots, noise_rng, point.noiseless);
    const ComplexMatrix& xbar = pilots.measurement;
    const double stop = noise_floor_energy(point.eta2, point.N, point.M, power);
    const std::size_t users = point.K;
    const double k = static_cast<double>(users);

    auto to_antenna = [&](const ComplexMatrix& angular) {
        return angular_estimate_to_antenna(angular, channels.rx_basis, channels.tx_basis);
    };

    std::vector<TrialOutcome> out;
    out.reserve(point.algorithms.size());
    for (Algorithm a : point.algorithms) {
        TrialOutcome o;
        double theta_i = 0.0;
        double seconds = 0.0;
        auto score = [&](std::size_t i, const ComplexMatrix& estimate) {
            o.nmse += nmse(channels.antenna[i], estimate) / k;
            o.nmae += nmae(channels.antenna[i], estimate) / k;
        };
        switch (a) {
        case Algorithm::Jomp: {
            JompConfig jc;
            jc.stats = point.stats;
            jc.eta1 = point.eta1;
            jc.eta2 = point.eta2;
            const RecoveryReport report = jomp(meas.transformed, xbar, jc, power);
            for (std::size_t i = 0; i < users; ++i) {
                score(i, to_antenna(report.angular[i]));
                seconds += report.user_seconds[i];
            }
            const SupportEvents ev = detect_events(support, report);
            o.theta_c = ev.theta_c ? 1.0 : 0.0;
            for (bool b : ev.theta_i)
                theta_i += b ? 1.0 : 0.0;
            break;
        }
        case Algorithm::Somp:
        case Algorithm::Omp:
        case Algorithm::Genie: {
            for (std::size_t i = 0; i < users; ++i) {
                const auto start = Clock::now();
                SparseEstimate est;
                if (a == Algorithm::Somp)
                    est = somp_single(meas.transformed[i], xbar, point.stats.individual_max, stop);
                else if (a == Algorithm::Omp)
                    est = omp_single(meas.transformed[i], xbar, point.stats.individual_max, stop);
                else
                    est = genie_ls(meas.transformed[i], xbar, support.individual[i]);
                seconds += seconds_since(start);
                score(i, to_antenna(est.angular));
                theta_i += est.support == support.individual[i] ? 1.0 : 0.0;
            }
            o.theta_c = a == Algorithm::Genie ? 1.0 : kNaN;
            break;
        }
        case Algorithm::Ls: {
            const LsEstimator ls(pilots.pilots);
            for (std::size_t i = 0; i < users; ++i) {
                const auto start = Clock::now();
                const ComplexMatrix est = ls.apply(meas.raw[i]);
                seconds += seconds_since(start);
                score(i, est);
            }
            o.theta_c = kNaN;
            break;
        }
        }
        o.theta_i = theta_i / k;
        o.seconds = point.measure_time ? seconds / k : 0.0;
        out.push_back(o);
    }
    return out;
}

BoundReport evaluate_point_bounds(const ExperimentConfig& point, std::size_t sweep_index) {
    BoundReport r;
    r.sweep_value = point.sweep_values.front();
    const std::size_t s = point.stats.individual_max;
    if (2 * s > point.T) {
        r.computed = false;
        for (double* f : {&r.delta_1, &r.delta_s, &r.delta_s1, &r.delta_2s, &r.gamma, &r.theta, &r.p, &r.vartheta,
                          &r.pr_common, &r.pr_common_raw, &r.pr_individual, &r.pr_individual_raw, &r.nmae,
                          &r.beta1, &r.beta2, &r.user_rate, &r.high_snr})
            *f = kNaN;
        return r;
    }
    r.computed = true;
    const double power = db_to_linear(point.P_dB);
    auto pilot_rng = make_stream(point.seed, sweep_index, 0, StreamPurpose::Pilots);
    const PilotBlock pilots = generate_pilots(point.M, point.T, power, dft_unitary(point.M), pilot_rng);

    auto ric_rng = make_stream(point.seed, sweep_index, 0, StreamPurpose::Ric);
    r.delta_1 = ric_estimate(pilots.measurement, 1, point.ric_trials, ric_rng).delta;
    r.delta_s = ric_estimate(pilots.measurement, s, point.ric_trials, ric_rng).delta;
    r.delta_s1 = ric_estimate(pilots.measurement, s + 1, point.ric_trials, ric_rng).delta;
    r.delta_2s = ric_estimate(pilots.measurement, 2 * s, point.ric_trials, ric_rng).delta;

    for (std::size_t t = 0; t < point.trials; ++t) {
        auto support_rng = make_stream(point.seed, sweep_index, t, StreamPurpose::Support);
        r.gamma = std::max(r.gamma, sample_supports(point.M, point.K, point.stats, support_rng).ratio);
    }

    BoundInputs in;
    in.delta_1 = r.delta_1;
    in.delta_s = r.delta_s;
    in.delta_s1 = r.delta_s1;
    in.delta_2s = r.delta_2s;
    in.eta1 = point.eta1;
    in.eta2 = point.eta2;
    in.num_tx = point.M;
    in.num_rx = point.N;
    in.slots = point.T;
    in.num_users = point.K;
    in.s = s;
    in.s_c = point.stats.common_min;
    in.power = power;
    in.gamma = r.gamma;
    in.epsilon = point.stats.epsilon;

    const bool usable = std::max({r.delta_1, r.delta_s, r.delta_s1, r.delta_2s}) < 1.0 && r.gamma < 1.0;
    if (!usable) {
        for (double* f : {&r.theta, &r.p, &r.vartheta, &r.pr_common, &r.pr_common_raw, &r.pr_individual,
                          &r.pr_individual_raw, &r.nmae, &r.beta1, &r.beta2, &r.user_rate, &r.high_snr})
            *f = kNaN;
        r.valid = false;
        return r;
    }
    const BoundOutputs b = evaluate_bounds(in);
    r.theta = b.theta_p.theta;
    r.p = b.theta_p.p;
    r.vartheta = b.vartheta;
    r.pr_common = b.pr_common.value;
    r.pr_common_raw = b.pr_common.raw;
    r.pr_individual = b.pr_individual.value;
    r.pr_individual_raw = b.pr_individual.raw;
    r.nmae = b.nmae.value;
    r.beta1 = b.rates.beta1;
    r.beta2 = b.rates.beta2;
    r.user_rate = b.rates.user_rate;
    r.high_snr = b.rates.high_snr;
    r.valid = b.valid;
    return r;
}

ResultTable run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ExperimentConfig> points;
    points.reserve(cfg.sweep_values.size());
    for (double v : cfg.sweep_values)
        points.push_back(cfg.at(v));

    const std::size_t n_points = points.size();
    const std::size_t n_trials = cfg.trials;
    const std::size_t n_items = n_points * n_trials;
    std::vector<std::vector<TrialOutcome>> outcomes(n_items);

    std::size_t workers = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.jobs;
    workers = std::min(workers, n_items);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_item = n_items;
    std::exception_ptr error;

    auto work = [&] {
        while (true) {
            const std::size_t item = next.fetch_add(1);
            if (item >= n_items)
                return;
            try {
                outcomes[item] = run_trial(points[item / n_trials], item / n_trials, item % n_trials);
            } catch (...) {
                // keep the lowest failing item so the reported error does not depend on scheduling
                std::lock_guard lock(error_mutex);
                if (item < error_item) {
                    error_item = item;
                    error = std::current_exception();
                }
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);

    ResultTable table;
    table.sweep_variable = cfg.sweep_variable;
    for (std::size_t pi = 0; pi < n_points; ++pi) {
        BoundReport bound;
        const bool with_bounds = cfg.bounds;
        if (with_bounds) {
            bound = evaluate_point_bounds(points[pi], pi);
            table.bounds.push_back(bound);
        }
        for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
            std::vector<double> e2, e1, tc, ti, sec;
            for (std::size_t t = 0; t < n_trials; ++t) {
                const TrialOutcome& o = outcomes[pi * n_trials + t][ai];
                e2.push_back(o.nmse);
                e1.push_back(o.nmae);
                tc.push_back(o.theta_c);
                ti.push_back(o.theta_i);
                sec.push_back(o.seconds);
            }
            ResultRow row;
            row.sweep_value = cfg.sweep_values[pi];
            row.algorithm = cfg.algorithms[ai];
            const Moments m2 = moments(e2);
            const Moments m1 = moments(e1);
            row.nmse_mean = m2.mean;
            row.nmse_stderr = m2.stderr_;
            row.nmae_mean = m1.mean;
            row.nmae_stderr = m1.stderr_;
            row.pr_theta_c = moments(tc).mean;
            row.pr_theta_i_mean = moments(ti).mean;
            row.time_s_mean = moments(sec).mean;
            row.bound_pr_c = kNaN;
            row.bound_pr_i = kNaN;
            row.bound_nmae = kNaN;
            if (with_bounds && row.algorithm == Algorithm::Jomp && bound.computed) {
                row.bound_pr_c = bound.pr_common;
                row.bound_pr_i = bound.pr_individual;
                row.bound_nmae = bound.nmae;
                row.bound_valid = bound.valid;
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

double TimingTable::at(Algorithm a, std::size_t M) const {
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
        if (algorithms[ai] != a)
            continue;
        for (std::size_t mi = 0; mi < M_values.size(); ++mi)
            if (M_values[mi] == M)
                return seconds[ai][mi];
    }
    fail(ErrorCode::InvalidConfig, "timing table: no entry for " + std::string(to_string(a)) + " at M = " +
                                       std::to_string(M));
}

TimingTable timing_table(const ExperimentConfig& cfg, const std::vector<std::size_t>& M_values) {
    require(!M_values.empty(), "timing_table: M list is empty");
    ExperimentConfig c = cfg;
    c.sweep_variable = SweepVariable::M;
    std::vector<std::size_t> ms = M_values;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    c.sweep_values.assign(ms.begin(), ms.end());
    c.jobs = 1;
    c.bounds = false;
    c.measure_time = true;
    const ResultTable table = run_sweep(c);

    TimingTable out;
    out.M_values = ms;
    out.algorithms = c.algorithms;
    for (Algorithm a : c.algorithms) {
        std::vector<double> row;
        for (std::size_t m : ms)
            row.push_back(table.row(static_cast<double>(m), a).time_s_mean);
        out.seconds.push_back(std::move(row));
    }
    return out;
}

bool timing_ordering_holds(const TimingTable& table) {
    auto has = [&](Algorithm a) {
        return std::find(table.algorithms.begin(), table.algorithms.end(), a) != table.algorithms.end();
    };
    for (std::size_t m : table.M_values) {
        if (has(Algorithm::Ls))
            for (Algorithm a : {Algorithm::Jomp, Algorithm::Somp, Algorithm::Omp})
                if (has(a) && !(table.at(Algorithm::Ls, m) < table.at(a, m)))
                    return false;
        if (has(Algorithm::Omp) && has(Algorithm::Somp) &&
            !(table.at(Algorithm::Somp, m) <= table.at(Algorithm::Omp, m)))
            return false;
    }
    return true;
}

std::string to_csv(const ResultTable& table) {
    std::string out = "sweep_var,sweep_value,algorithm,nmse_mean,nmse_stderr,nmae_mean,nmae_stderr,pr_theta_c,"
                      "pr_theta_i_mean,time_s_mean,bound_pr_c,bound_pr_i,bound_nmae,bound_valid\n";
    const std::string var(to_string(table.sweep_variable));
    for (const auto& r : table.rows) {
        out += var;
        for (const std::string& field :
             {fmt(r.sweep_value), std::string(to_string(r.algorithm)), fmt(r.nmse_mean), fmt(r.nmse_stderr),
              fmt(r.nmae_mean), fmt(r.nmae_stderr), fmt(r.pr_theta_c), fmt(r.pr_theta_i_mean), fmt(r.time_s_mean),
              fmt(r.bound_pr_c), fmt(r.bound_pr_i), fmt(r.bound_nmae),
              std::string(r.bound_valid ? "true" : "false")}) {
            out += ',';
            out += field;
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const ResultTable& table) {
    nlohmann::json j;
    j["sweep_var"] = std::string(to_string(table.sweep_variable));
    j["rows"] = nlohmann::json::array();
    for (const auto& r : table.rows) {
        j["rows"].push_back({{"sweep_value", num(r.sweep_value)},
                             {"algorithm", std::string(to_string(r.algorithm))},
                             {"nmse_mean", num(r.nmse_mean)},
                             {"nmse_stderr", num(r.nmse_stderr)},
                             {"nmae_mean", num(r.nmae_mean)},
                             {"nmae_stderr", num(r.nmae_stderr)},
                             {"pr_theta_c", num(r.pr_theta_c)},
                             {"pr_theta_i_mean", num(r.pr_theta_i_mean)},
                             {"time_s_mean", num(r.time_s_mean)},
                             {"bound_pr_c", num(r.bound_pr_c)},
                             {"bound_pr_i", num(r.bound_pr_i)},
                             {"bound_nmae", num(r.bound_nmae)},
                             {"bound_valid", r.bound_valid}});
    }
    j["bounds"] = nlohmann::json::array();
    for (const auto& b : table.bounds) {
        j["bounds"].push_back({{"sweep_value", num(b.sweep_value)},
                               {"computed", b.computed},
                               {"delta_1", num(b.delta_1)},
                               {"delta_s", num(b.delta_s)},
                               {"delta_s1", num(b.delta_s1)},
                               {"delta_2s", num(b.delta_2s)},
                               {"gamma", num(b.gamma)},
                               {"theta", num(b.theta)},
                               {"p", num(b.p)},
                               {"vartheta", num(b.vartheta)},
                               {"pr_common", num(b.pr_common)},
                               {"pr_common_raw", num(b.pr_common_raw)},
                               {"pr_individual", num(b.pr_individual)},
                               {"pr_individual_raw", num(b.pr_individual_raw)},
                               {"nmae", num(b.nmae)},
                               {"beta1", num(b.beta1)},
                               {"beta2", num(b.beta2)},
                               {"user_rate", num(b.user_rate)},
                               {"high_snr", num(b.high_snr)},
                               {"valid", b.valid}});
    }
    return j.dump(2) + "\n";
}

ResultTable table_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Io, std::string("result table: malformed JSON: ") + e.what());
    }
    try {
        ResultTable t;
        t.sweep_variable = parse_sweep_variable(j.at("sweep_var").get<std::string>());
        for (const auto& r : j.at("rows")) {
            ResultRow row;
            row.sweep_value = get_num(r, "sweep_value");
            row.algorithm = parse_algorithm(r.at("algorithm").get<std::string>());
            row.nmse_mean = get_num(r, "nmse_mean");
            row.nmse_stderr = get_num(r, "nmse_stderr");
            row.nmae_mean = get_num(r, "nmae_mean");
            row.nmae_stderr = get_num(r, "nmae_stderr");
            row.pr_theta_c = get_num(r, "pr_theta_c");
            row.pr_theta_i_mean = get_num(r, "pr_theta_i_mean");
            row.time_s_mean = get_num(r, "time_s_mean");
            row.bound_pr_c = get_num(r, "bound_pr_c");
            row.bound_pr_i = get_num(r, "bound_pr_i");
            row.bound_nmae = get_num(r, "bound_nmae");
            row.bound_valid = r.at("bound_valid").get<bool>();
            t.rows.push_back(row);
        }
        if (j.contains("bounds")) {
            for (const auto& b : j.at("bounds")) {
                BoundReport br;
                br.sweep_value = get_num(b, "sweep_value");
                br.computed = b.at("computed").get<bool>();
                br.delta_1 = get_num(b, "delta_1");
                br.delta_s = get_num(b, "delta_s");
                br.delta_s1 = get_num(b, "delta_s1");
                br.delta_2s = get_num(b, "delta_2s");
                br.gamma = get_num(b, "gamma");
                br.theta = get_num(b, "theta");
                br.p = get_num(b, "p");
                br.vartheta = get_num(b, "vartheta");
                br.pr_common = get_num(b, "pr_common");
                br.pr_common_raw = get_num(b, "pr_common_raw");
                br.pr_individual = get_num(b, "pr_individual");
                br.pr_individual_raw = get_num(b, "pr_individual_raw");
                br.nmae = get_num(b, "nmae");
                br.beta1 = get_num(b, "beta1");
                br.beta2 = get_num(b, "beta2");
                br.user_rate = get_num(b, "user_rate");
                br.high_snr = get_num(b, "high_snr");
                br.valid = b.at("valid").get<bool>();
                t.bounds.push_back(br);
            }
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Io, std::string("result table: unexpected JSON layout: ") + e.what());
    }
}

std::string timing_to_csv(const TimingTable& table) {
    std::string out = "M";
    for (Algorithm a : table.algorithms) {
        out += ',';
        out += to_string(a);
    }
    out += '\n';
    for (std::size_t mi = 0; mi < table.M_values.size(); ++mi) {
        out += std::to_string(table.M_values[mi]);
        for (std::size_t ai = 0; ai < table.algorithms.size(); ++ai) {
            out += ',';
            out += fmt(table.seconds[ai][mi]);
        }
        out += '\n';
    }
    return out;
}

void emit(const ResultTable& table, OutputFormat format, const std::string& path) {
    require(!table.rows.empty(), "emit: result table is empty");
    const std::string body = format == OutputFormat::Csv ? to_csv(table) : to_json(table);
    if (path.empty() || path == "-") {
        std::cout << body;
        std::cout.flush();
        if (!std::cout)
            fail(ErrorCode::Io, "emit: failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::Io, "emit: cannot open '" + path + "' for writing");
    out << body;
    out.close();
    if (!out)
        fail(ErrorCode::Io, "emit: failed writing '" + path + "'");
}

std::string error_json(std::string_view code, std::string_view message) {
    nlohmann::json j{{"error", std::string(code)}, {"message", std::string(message)}};
    return j.dump();
}

} // namespace jomp

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

#include "jomp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "jomp/error.hpp"

namespace jomp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

// ln x - 1 + 1/x, the lower-tail Chernoff exponent at 1/x
double lower_exponent(double x) {
    return std::log(x) - 1.0 + 1.0 / x;
}

// x - 1 - ln x, the upper-tail Chernoff exponent
double upper_exponent(double x) {
    return x - 1.0 - std::log(x);
}

double noise_exponent(const BoundInputs& in) {
    return static_cast<double>(in.num_rx * in.slots) * upper_exponent(in.eta2);
}

double theta_for(const BoundInputs& in, double eta2) {
    const double ds = in.delta_s;
    const double ds1 = in.delta_s1;
    const double root_eta1 = std::sqrt(in.eta1);
    const double floor = std::sqrt((1.0 + in.delta_1) * eta2 * static_cast<double>(in.num_tx) / in.power);

    const double first_den = ds1 + 2.0 * (1.0 - ds) * floor;
    const double first = first_den > 0.0 ? (1.0 - 2.0 * ds) / first_den : kInf;

    const double second_den = (1.0 - ds) * (1.0 - ds) * (root_eta1 + floor) * (root_eta1 + floor);
    const double second = second_den > 0.0 ? (1.0 - 2.0 * ds) * (1.0 - 2.0 * ds) / second_den : kInf;

    // Zero (vacuous) unless the pruning threshold clears the noise floor.
    const double gap = root_eta1 - floor;
    double third = 0.0;
    if (gap > 0.0)
        third = ds1 > 0.0 ? gap * gap * (1.0 - ds) * (1.0 - ds) / (ds1 * ds1) : kInf;

    return std::min({first, second, third});
}

double p_for(const BoundInputs& in, double theta) {
    if (!(theta > 0.0))
        return kInf;
    const double n = static_cast<double>(in.num_rx);
    const double m = static_cast<double>(in.num_tx);
    return 2.0 * std::exp(-n * lower_exponent(theta)) + m * std::exp(-n * upper_exponent(theta)) +
           std::exp(-noise_exponent(in));
}

// sum of exp(terms) in log space with Neumaier-compensated accumulation
double log_sum_exp(const std::vector<double>& terms) {
    double hi = -kInf;
    for (double t : terms)
        hi = std::max(hi, t);
    if (hi == -kInf)
        return -kInf;
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double v = std::exp(t - hi);
        const double next = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - next) + v;
        else
            comp += (v - next) + sum;
        sum = next;
    }
    return hi + std::log(sum + comp);
}

} // namespace

void BoundInputs::validate() const {
    for (double d : {delta_1, delta_s, delta_s1, delta_2s})
        require(d >= 0.0 && d < 1.0, "bounds: restricted isometry constants must lie in [0, 1)");
    require(gamma >= 0.0 && gamma < 1.0, "bounds: gamma must lie in [0, 1)");
    require(epsilon >= 0.0 && epsilon < 1.0, "bounds: epsilon must lie in [0, 1)");
    require(eta1 > 0.0 && eta1 < 1.0, "bounds: eta1 must lie in (0, 1)");
    require(eta2 > 1.0, "bounds: eta2 must exceed 1");
    require(num_tx >= 1 && num_rx >= 1 && slots >= 1 && num_users >= 1 && s >= 1,
            "bounds: M, N, T, K and s must be positive");
    require(s_c <= s, "bounds: s_c must not exceed s");
    require(power > 0.0, "bounds: P must be positive");
}

double binomial_sum(std::size_t n, std::size_t lo, std::size_t hi) {
    double c = 1.0;  // C(n, 0)
    double total = 0.0;
    for (std::size_t t = 0; t <= std::min(hi, n); ++t) {
        if (t >= lo)
            total += c;
        c = c * static_cast<double>(n - t) / static_cast<double>(t + 1);
    }
    return total;
}

double log_binomial_lower_tail(std::size_t num_users, std::size_t upper, double p) {
    const std::size_t last = std::min(upper, num_users);
    const double k = static_cast<double>(num_users);
    std::vector<double> terms;
    terms.reserve(last + 1);
    for (std::size_t t = 0; t <= last; ++t) {
        const double td = static_cast<double>(t);
        double lt = std::lgamma(k + 1.0) - std::lgamma(td + 1.0) - std::lgamma(k - td + 1.0);
        if (t > 0)
            lt += td * std::log1p(-p);
        if (t < num_users)
            lt += (k - td) * std::log(p);
        terms.push_back(lt);
    }
    return log_sum_exp(terms);
}

ThetaP compute_theta_p(const BoundInputs& in) {
    in.validate();
    ThetaP out;
    out.theta = theta_for(in, in.eta2);
    out.p = p_for(in, out.theta);
    out.valid = out.theta > 1.0 && out.p < 1.0;
    return out;
}

double compute_vartheta(const BoundInputs& in) {
    return (1.0 - in.delta_s) * in.power / (4.0 * in.eta2 * static_cast<double>(in.num_tx));
}

ProbabilityBound pr_common_bound(const BoundInputs& in, double theta, double p) {
    in.validate();
    ProbabilityBound out;
    const double c0 = binomial_sum(in.s, 0, in.s_c) - 1.0;
    const double k = static_cast<double>(in.num_users);
    const auto upper = static_cast<std::size_t>(std::ceil((1.0 + in.gamma) * k / 2.0));
    if (!(p >= 0.0) || p >= 1.0) {
        out.raw = p >= 1.0 ? 1.0 - 2.0 * c0 : -kInf;
        out.value = clamp01(out.raw);
        out.valid = false;
        return out;
    }
    const double tail = std::exp(log_binomial_lower_tail(in.num_users, upper, p));
    out.raw = 1.0 - 2.0 * c0 * tail;
    out.value = clamp01(out.raw);
    out.valid = theta > 1.0;
    return out;
}

ProbabilityBound pr_individual_bound(const BoundInputs& in, double theta) {
    in.validate();
    ProbabilityBound out;
    const double vt = compute_vartheta(in);
    out.valid = theta > 1.0 && vt > 1.0;
    if (!(theta > 0.0) || !(vt > 0.0)) {
        out.raw = -kInf;
        out.value = 0.0;
        return out;
    }
    const double n = static_cast<double>(in.num_rx);
    const double ci = binomial_sum(in.s, in.s_c, in.s) - 1.0;
    out.raw = 1.0 - ci * std::exp(-n * lower_exponent(theta)) -
              ci * static_cast<double>(in.num_tx) * std::exp(-n * upper_exponent(theta)) -
              static_cast<double>(in.s) * std::exp(-n * lower_exponent(vt)) - std::exp(-noise_exponent(in));
    out.value = clamp01(out.raw);
    return out;
}

NmaeBound nmae_bound(const BoundInputs& in, double pr_common, double pr_individual) {
    in.validate();
    require(pr_common >= 0.0 && pr_common <= 1.0 && pr_individual >= 0.0 && pr_individual <= 1.0,
            "nmae_bound: probabilities must lie in [0, 1]");
    const double n = static_cast<double>(in.num_rx);
    const double m = static_cast<double>(in.num_tx);
    const double t = static_cast<double>(in.slots);
    const double s = static_cast<double>(in.s);
    const double ds = in.delta_s;
    NmaeBound out;
    out.noise_term = std::sqrt(m * n * s / (in.power * t * (1.0 - ds))) *
                     std::exp(std::lgamma(n - 0.5) - std::lgamma(n));
    const double misfit = (1.0 - ds + in.delta_2s) / (1.0 - ds);
    out.common_term = (1.0 - pr_common) * misfit;
    out.individual_term = (1.0 - pr_individual) * misfit;
    out.sparsity_term = in.epsilon * (1.0 + std::sqrt((1.0 + in.delta_1) / (1.0 - ds)));
    out.value = out.noise_term + out.common_term + out.individual_term + out.sparsity_term;
    return out;
}

CorollaryRates corollary_rates(const BoundInputs& in, double theta, double vartheta, double p) {
    in.validate();
    CorollaryRates out;
    const double t_noise = static_cast<double>(in.slots) * upper_exponent(in.eta2);
    if (theta > 0.0) {
        out.beta1 = std::min({lower_exponent(theta), upper_exponent(theta), t_noise});
        out.beta1_valid = theta > 1.0;
        if (vartheta > 0.0) {
            out.beta2 = std::min(out.beta1, lower_exponent(vartheta));
            out.beta2_valid = out.beta1_valid && vartheta > 1.0;
        }
    }

    const double g = in.gamma;
    if (p > 0.0 && p < 1.0) {
        out.user_rate = (1.0 - g) / 2.0 * std::log((1.0 - p) * (1.0 - g) / (p * (1.0 + g))) -
                        std::log(2.0 * (1.0 - p) / (1.0 + g));
    } else if (p == 0.0) {
        out.user_rate = kInf;
    }
    out.user_rate_valid = theta > 1.0 && p >= 0.0 && p < (1.0 - g) / 2.0;

    // High-SNR regime: the stopping threshold is rescaled to eta2 = sqrt(P).
    BoundInputs scaled = in;
    scaled.eta2 = std::sqrt(in.power);
    if (scaled.eta2 > 1.0) {
        const double theta_hs = theta_for(scaled, scaled.eta2);
        if (theta_hs > 0.0) {
            const double n = static_cast<double>(in.num_rx);
            const double misfit = (1.0 - in.delta_s + in.delta_2s) / (1.0 - in.delta_s);
            const double e = misfit * (std::exp(-n * lower_exponent(theta_hs)) +
                                       static_cast<double>(in.num_tx) * std::exp(-n * upper_exponent(theta_hs)));
            out.high_snr = (binomial_sum(in.s, in.s_c, in.s) - 1.0) * e;
            const double p_hs = p_for(scaled, theta_hs);
            out.high_snr_valid = theta_hs > 1.0 && p_hs < (1.0 - g) / 2.0;
        }
    }
    return out;
}

BoundOutputs evaluate_bounds(const BoundInputs& in) {
    BoundOutputs out;
    out.theta_p = compute_theta_p(in);
    out.vartheta = compute_vartheta(in);
    out.pr_common = pr_common_bound(in, out.theta_p.theta, out.theta_p.p);
    out.pr_individual = pr_individual_bound(in, out.theta_p.theta);
    out.nmae = nmae_bound(in, out.pr_common.value, out.pr_individual.value);
    out.rates = corollary_rates(in, out.theta_p.theta, out.vartheta, out.theta_p.p);
    out.valid = out.theta_p.valid && out.pr_common.valid && out.pr_individual.valid;
    return out;
}

double chernoff_tail(double k, double x, TailSide side) {
    require(k > 0.0, "chernoff_tail: k must be positive");
    if (side == TailSide::Lower)
        require(x > 0.0 && x < 1.0, "chernoff_tail: lower tail needs 0 < x < 1");
    else
        require(x > 1.0, "chernoff_tail: upper tail needs x > 1");
    return std::exp(-k * (-1.0 + x - std::log(x)));
}

double ld_rate(double p, std::size_t num_users, std::size_t k2) {
    require(num_users >= 1 && k2 >= 1 && k2 < num_users, "ld_rate: need 0 < K2 < K");
    const double b = static_cast<double>(k2) / static_cast<double>(num_users);
    require(p >= 0.0 && p < 1.0 - b, "ld_rate: need 0 <= p < 1 - K2/K");
    if (p == 0.0)
        return kInf;
    // Kullback-Leibler divergence D(1 - K2/K || p).
    return (1.0 - b) * std::log((1.0 - p) * (1.0 - b) / (p * b)) - std::log((1.0 - p) / b);
}

double isometry_defect(const ComplexMatrix& xbar, const IndexSet& support) {
    require(!support.empty(), "isometry_defect: empty support");
    const ComplexMatrix cols = select_columns(xbar, support);
    const ComplexMatrix gram = cols.adjoint() * cols;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        fail(ErrorCode::NumericalFailure, "isometry_defect: eigen solver failed");
    const auto& ev = eig.eigenvalues();
    return std::max(ev(ev.size() - 1) - 1.0, 1.0 - ev(0));
}

RicEstimate ric_estimate(const ComplexMatrix& xbar, std::size_t k, std::size_t trials, SeededRng& rng) {
    const auto slots = static_cast<std::size_t>(xbar.rows());
    const auto cols = static_cast<std::size_t>(xbar.cols());
    require(k >= 1, "ric_estimate: k must be >= 1");
    require(k <= slots, "ric_estimate: k must not exceed T");
    require(k <= cols, "ric_estimate: k must not exceed M");
    require(trials >= 1, "ric_estimate: need at least one trial");

    const Eigen::MatrixXd coherence = (xbar.adjoint() * xbar).cwiseAbs();
    std::uniform_int_distribution<std::size_t> pick_col(0, cols - 1);
    std::vector<std::size_t> pool(cols);
    std::vector<double> score(cols);

    RicEstimate out;
    out.order = k;
    out.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::vector<std::size_t> chosen;
        chosen.reserve(k);
        if (trial % 2 == 1 && k >= 2) {
            const std::size_t seed_col = pick_col(rng);
            chosen.push_back(seed_col);
            std::fill(score.begin(), score.end(), 0.0);
            std::vector<bool> used(cols, false);
            used[seed_col] = true;
            std::size_t last = seed_col;
            while (chosen.size() < k) {
                std::size_t best = cols;
                for (std::size_t j = 0; j < cols; ++j) {
                    if (used[j])
                        continue;
                    score[j] += coherence(static_cast<Eigen::Index>(last), static_cast<Eigen::Index>(j));
                    if (best == cols || score[j] > score[best])
                        best = j;
                }
                used[best] = true;
                chosen.push_back(best);
                last = best;
            }
        } else {
            std::iota(pool.begin(), pool.end(), std::size_t{0});
            for (std::size_t i = 0; i < k; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, cols - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            chosen.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        }
        out.delta = std::max(out.delta, isometry_defect(xbar, IndexSet(std::move(chosen))));
    }
    return out;
}

} // namespace jomp

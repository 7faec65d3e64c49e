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

#ifndef JOMP_BOUNDS_HPP
#define JOMP_BOUNDS_HPP

#include <cstddef>

#include "jomp/numeric.hpp"
#include "jomp/rng.hpp"

namespace jomp {

// Monte Carlo estimate of the restricted isometry constant of order k. Each
// trial picks a support (uniformly at random, or grown greedily by mutual
// coherence from a random seed column on alternate trials) and computes the
// exact isometry defect of that support from the extremal eigenvalues of its
// Gram block. The maximum over trials never exceeds the true delta_k.
struct RicEstimate {
    std::size_t order = 0;
    double delta = 0.0;
    std::size_t trials = 0;
};

RicEstimate ric_estimate(const ComplexMatrix& xbar, std::size_t k, std::size_t trials, SeededRng& rng);

// max(lambda_max - 1, 1 - lambda_min) of Xbar_S^H Xbar_S.
double isometry_defect(const ComplexMatrix& xbar, const IndexSet& support);

struct BoundInputs {
    double delta_1 = 0.0;
    double delta_s = 0.0;
    double delta_s1 = 0.0;   // order s + 1
    double delta_2s = 0.0;
    double eta1 = 0.2;
    double eta2 = 2.0;
    std::size_t num_tx = 1;     // M
    std::size_t num_rx = 1;     // N
    std::size_t slots = 1;      // T
    std::size_t num_users = 1;  // K
    std::size_t s = 1;
    std::size_t s_c = 0;
    double power = 1.0;         // linear P
    double gamma = 0.0;
    double epsilon = 0.0;

    void validate() const;
};

struct ThetaP {
    double theta = 0.0;
    double p = 0.0;
    bool valid = false;  // theta > 1 and p < 1
};

// A probability lower bound: `raw` is the formula value, `value` is clamped to [0, 1].
struct ProbabilityBound {
    double value = 0.0;
    double raw = 0.0;
    bool valid = false;
};

struct NmaeBound {
    double value = 0.0;
    double noise_term = 0.0;     // sqrt(MNs / (PT(1 - delta_s))) Gamma(N - 1/2) / Gamma(N)
    double common_term = 0.0;    // C_i
    double individual_term = 0.0;// E_i
    double sparsity_term = 0.0;  // epsilon (1 + sqrt((1 + delta_1) / (1 - delta_s)))
};

struct CorollaryRates {
    double beta1 = 0.0;
    double beta2 = 0.0;
    double user_rate = 0.0;   // R_K
    double high_snr = 0.0;    // NMAE bound with eta2 = sqrt(P)
    bool beta1_valid = false;
    bool beta2_valid = false;
    bool user_rate_valid = false;
    bool high_snr_valid = false;
};

struct BoundOutputs {
    ThetaP theta_p;
    double vartheta = 0.0;
    ProbabilityBound pr_common;
    ProbabilityBound pr_individual;
    NmaeBound nmae;
    CorollaryRates rates;
    bool valid = false;
};

ThetaP compute_theta_p(const BoundInputs& in);

// (1 - delta_s) P / (4 eta2 M)
double compute_vartheta(const BoundInputs& in);

ProbabilityBound pr_common_bound(const BoundInputs& in, double theta, double p);
ProbabilityBound pr_individual_bound(const BoundInputs& in, double theta);
NmaeBound nmae_bound(const BoundInputs& in, double pr_common, double pr_individual);
CorollaryRates corollary_rates(const BoundInputs& in, double theta, double vartheta, double p);

BoundOutputs evaluate_bounds(const BoundInputs& in);

enum class TailSide { Lower, Upper };

// Chernoff bound on Pr(chi2_{2k} <= 2xk) (lower, 0 < x < 1) or
// Pr(chi2_{2k} >= 2xk) (upper, x > 1): exp(-k (x - 1 - ln x)).
double chernoff_tail(double k, double x, TailSide side);

// Exponential decay rate of sum_{t<=K2} C(K,t) (1-p)^t p^(K-t) as K grows with
// K2/K fixed; requires 0 <= p < 1 - K2/K < 1.
double ld_rate(double p, std::size_t num_users, std::size_t k2);

// sum_{t=lo}^{hi} C(n, t)
double binomial_sum(std::size_t n, std::size_t lo, std::size_t hi);

// log of sum_{t=0}^{upper} C(K,t) (1-p)^t p^(K-t)
double log_binomial_lower_tail(std::size_t num_users, std::size_t upper, double p);

} // namespace jomp

#endif

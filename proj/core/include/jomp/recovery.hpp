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

#ifndef JOMP_RECOVERY_HPP
#define JOMP_RECOVERY_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "jomp/channel.hpp"
#include "jomp/numeric.hpp"

namespace jomp {

struct JompConfig {
    SparsityStats stats;
    double eta1 = 0.2;  // common-phase pruning threshold, in (0, 1)
    double eta2 = 2.0;  // noise-floor stopping factor, > 1
    NumericTolerances tolerances{};

    void validate() const;
};

// Optional instrumentation of the greedy iterations, used by the invariant
// property tests. Recording costs one extra matched-filter product per update.
struct GreedyTrace {
    static constexpr std::size_t kAllUsers = std::numeric_limits<std::size_t>::max();

    enum class Phase { Common, Individual };

    struct Selection {
        Phase phase;
        std::size_t user;   // kAllUsers for a common-support vote
        std::size_t index;
        bool reselected;    // index was already in the support it was added to
    };

    struct Residual {
        std::size_t user;
        std::size_t support_size;
        double norm;             // ||R||_F
        double orthogonality;    // ||Xbar_S^H R||_F / ||Ybar||_F (0 when Ybar = 0)
    };

    std::vector<Selection> selections;
    std::vector<Residual> residuals;
};

struct RecoveryReport {
    IndexSet common;                      // estimated common support
    std::vector<IndexSet> individual;     // estimated per-user supports
    std::vector<ComplexMatrix> angular;   // Hbar_i^e, M x N
    std::vector<ComplexMatrix> antenna;   // H_i^e, N x M (see attach_antenna_estimates)
    std::vector<double> residual_norms;
    std::vector<double> user_seconds;     // common phase time split evenly across users
    double total_seconds = 0.0;
    std::size_t common_rounds = 0;        // vote rounds that added an index
    bool common_stopped_early = false;    // a round ended with no surviving vote
};

struct SparseEstimate {
    IndexSet support;
    ComplexMatrix angular;  // M x N, zero outside `support`
    double residual_norm = 0.0;
};

// Joint OMP over all users' transformed observations. `power` is the linear
// per-slot SNR P, used only by the individual-phase stopping rule.
RecoveryReport jomp(std::span<const ComplexMatrix> ybar, const ComplexMatrix& xbar,
                    const JompConfig& cfg, double power, GreedyTrace* trace = nullptr);

// Row-aggregate (2-norm) simultaneous OMP on one user.
SparseEstimate somp_single(const ComplexMatrix& ybar, const ComplexMatrix& xbar, std::size_t max_iters,
                           double stop_energy, const NumericTolerances& tol = {},
                           GreedyTrace* trace = nullptr);

// Conventional OMP: one independent run per column of `ybar` (stop energy split
// evenly across columns), supports unioned, then a joint LS refit on the union.
SparseEstimate omp_single(const ComplexMatrix& ybar, const ComplexMatrix& xbar, std::size_t max_iters,
                          double stop_energy, const NumericTolerances& tol = {});

// LS refit on a known support.
SparseEstimate genie_ls(const ComplexMatrix& ybar, const ComplexMatrix& xbar, const IndexSet& support,
                        const NumericTolerances& tol = {});

// Plain least squares H = Y X^dagger. The pseudoinverse depends only on the
// pilots, so it is factored once and applied per user.
class LsEstimator {
public:
    explicit LsEstimator(const ComplexMatrix& pilots, const NumericTolerances& tol = {});
    ComplexMatrix apply(const ComplexMatrix& observation) const;

private:
    ComplexMatrix pinv_;  // T x M
};

ComplexMatrix ls_full(const ComplexMatrix& observation, const ComplexMatrix& pilots,
                      const NumericTolerances& tol = {});

// Default stopping energy eta2 * N * M / P shared by J-OMP and the greedy baselines.
double noise_floor_energy(double eta2, std::size_t num_rx, std::size_t num_tx, double power) noexcept;

void attach_antenna_estimates(RecoveryReport& report, const ComplexMatrix& rx_basis,
                              const ComplexMatrix& tx_basis);

// H^e = A_R (Hbar^e)^H A_T^H
ComplexMatrix angular_estimate_to_antenna(const ComplexMatrix& angular_estimate,
                                          const ComplexMatrix& rx_basis, const ComplexMatrix& tx_basis);

} // namespace jomp

#endif

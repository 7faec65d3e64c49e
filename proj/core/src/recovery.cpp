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

#include "jomp/recovery.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "jomp/error.hpp"

namespace jomp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// m(j)^2 = ||Xbar(j)^H R||_F^2 for every column j.
Eigen::VectorXd match_energy(const ComplexMatrix& xbar, const ComplexMatrix& residual) {
    return (xbar.adjoint() * residual).rowwise().squaredNorm();
}

double orthogonality(const ComplexMatrix& xbar, const IndexSet& support, const ComplexMatrix& residual,
                     double ybar_norm) {
    if (support.empty() || ybar_norm == 0.0)
        return 0.0;
    return (select_columns(xbar, support).adjoint() * residual).norm() / ybar_norm;
}

// Greedy state of one user: the support grown so far, an orthonormal basis of
// its span, and R = (I - P_support) Ybar.
struct Pursuit {
    IndexSet support;
    IncrementalBasis basis;
    ComplexMatrix residual;
};

void record_residual(GreedyTrace* trace, std::size_t user, const Pursuit& p, const ComplexMatrix& xbar,
                     double ybar_norm) {
    if (trace == nullptr)
        return;
    trace->residuals.push_back({user, p.support.size(), p.residual.norm(),
                                orthogonality(xbar, p.support, p.residual, ybar_norm)});
}

// Adds argmax_j m(j) (j outside the support, lowest index on ties) until the
// residual energy reaches `stop_energy`, the support spans T columns, or
// `max_additions` indices have been added.
void extend_greedy(Pursuit& p, const ComplexMatrix& ybar, const ComplexMatrix& xbar,
                   std::size_t max_additions, double stop_energy, std::size_t user,
                   GreedyTrace* trace) {
    const auto slots = static_cast<std::size_t>(xbar.rows());
    const double ybar_norm = trace != nullptr ? ybar.norm() : 0.0;
    for (std::size_t added = 0; added < max_additions; ++added) {
        if (p.residual.squaredNorm() <= stop_energy)
            break;
        if (p.support.size() >= slots)
            break;
        const Eigen::VectorXd energy = match_energy(xbar, p.residual);
        std::size_t best = 0;
        double best_energy = -1.0;
        for (Eigen::Index j = 0; j < energy.size(); ++j) {
            const auto idx = static_cast<std::size_t>(j);
            if (p.support.contains(idx))
                continue;
            if (energy(j) > best_energy) {
                best_energy = energy(j);
                best = idx;
            }
        }
        if (best_energy < 0.0)
            break;
        const bool fresh = p.support.insert(best);
        if (trace != nullptr)
            trace->selections.push_back({GreedyTrace::Phase::Individual, user, best, !fresh});
        if (p.basis.append(xbar.col(static_cast<Eigen::Index>(best))))
            p.basis.deflate(p.residual);
        record_residual(trace, user, p, xbar, ybar_norm);
    }
}

ComplexMatrix refit(const ComplexMatrix& ybar, const ComplexMatrix& xbar, const IndexSet& support,
                    const NumericTolerances& tol) {
    ComplexMatrix out = ComplexMatrix::Zero(xbar.cols(), ybar.cols());
    if (support.empty())
        return out;
    const ComplexMatrix coeff = ls_solve(select_columns(xbar, support), ybar, tol);
    Eigen::Index r = 0;
    for (auto j : support)
        out.row(static_cast<Eigen::Index>(j)) = coeff.row(r++);
    return out;
}

void check_shapes(const ComplexMatrix& ybar, const ComplexMatrix& xbar) {
    require(xbar.rows() >= 1 && xbar.cols() >= 1, "recovery: empty measurement matrix");
    require(ybar.rows() == xbar.rows(), "recovery: Ybar rows must equal Xbar rows (T)");
    require(ybar.cols() >= 1, "recovery: Ybar needs at least one column");
}

} // namespace

void JompConfig::validate() const {
    require(eta1 > 0.0 && eta1 < 1.0, "jomp: eta1 must lie in (0, 1)");
    require(eta2 > 1.0, "jomp: eta2 must exceed 1");
    require(stats.common_min <= stats.individual_max, "jomp: s_c must not exceed s");
    require(stats.individual_max >= 1, "jomp: s must be >= 1");
}

double noise_floor_energy(double eta2, std::size_t num_rx, std::size_t num_tx, double power) noexcept {
    return eta2 * static_cast<double>(num_rx) * static_cast<double>(num_tx) / power;
}

RecoveryReport jomp(std::span<const ComplexMatrix> ybar, const ComplexMatrix& xbar, const JompConfig& cfg,
                    double power, GreedyTrace* trace) {
    cfg.validate();
    require(!ybar.empty(), "jomp: need at least one user");
    require(power > 0.0, "jomp: P must be positive");
    for (const auto& y : ybar) {
        check_shapes(y, xbar);
        require(y.cols() == ybar.front().cols(), "jomp: all users need the same N");
    }

    const auto start = Clock::now();
    const std::size_t users = ybar.size();
    const std::size_t num_tx = static_cast<std::size_t>(xbar.cols());
    const std::size_t num_rx = static_cast<std::size_t>(ybar.front().cols());
    const std::size_t s = cfg.stats.individual_max;
    const std::size_t s_c = cfg.stats.common_min;
    const double prune = cfg.eta1 * static_cast<double>(num_rx);

    RecoveryReport report;
    IncrementalBasis common_basis(xbar.rows(), cfg.tolerances);
    std::vector<ComplexMatrix> residual(ybar.begin(), ybar.end());
    std::vector<double> ybar_norm(users, 0.0);
    if (trace != nullptr)
        for (std::size_t i = 0; i < users; ++i)
            ybar_norm[i] = ybar[i].norm();

    // Common support identification.
    std::vector<std::size_t> votes(num_tx);
    std::vector<double> vote_energy(num_tx);
    std::vector<std::size_t> order(num_tx);
    for (std::size_t round = 0; round < s_c; ++round) {
        std::fill(votes.begin(), votes.end(), 0);
        std::fill(vote_energy.begin(), vote_energy.end(), 0.0);
        const std::size_t budget = s > report.common.size() ? s - report.common.size() : 0;
        for (std::size_t i = 0; i < users && budget > 0; ++i) {
            const Eigen::VectorXd energy = match_energy(xbar, residual[i]);
            order.clear();
            for (std::size_t j = 0; j < num_tx; ++j)
                if (!report.common.contains(j))
                    order.push_back(j);
            const std::size_t take = std::min(budget, order.size());
            // top-`take` by matching energy; ties to the lower index
            std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                              [&](std::size_t a, std::size_t b) {
                                  const double ea = energy(static_cast<Eigen::Index>(a));
                                  const double eb = energy(static_cast<Eigen::Index>(b));
                                  return ea > eb || (ea == eb && a < b);
                              });
            for (std::size_t k = 0; k < take; ++k) {
                const std::size_t j = order[k];
                const double e = energy(static_cast<Eigen::Index>(j));
                if (e >= prune) {
                    ++votes[j];
                    vote_energy[j] += e;
                }
            }
        }

        std::size_t winner = num_tx;
        for (std::size_t j = 0; j < num_tx; ++j) {
            if (votes[j] == 0)
                continue;
            if (winner == num_tx || votes[j] > votes[winner] ||
                (votes[j] == votes[winner] && vote_energy[j] > vote_energy[winner]))
                winner = j;
        }
        if (winner == num_tx) {
            report.common_stopped_early = true;
            break;
        }

        const bool fresh = report.common.insert(winner);
        if (trace != nullptr)
            trace->selections.push_back({GreedyTrace::Phase::Common, GreedyTrace::kAllUsers, winner, !fresh});
        const bool grew = common_basis.append(xbar.col(static_cast<Eigen::Index>(winner)));
        ++report.common_rounds;
        for (std::size_t i = 0; i < users; ++i) {
            if (grew)
                common_basis.deflate(residual[i]);
            if (trace != nullptr)
                trace->residuals.push_back({i, report.common.size(), residual[i].norm(),
                                            orthogonality(xbar, report.common, residual[i], ybar_norm[i])});
        }
    }
    const double common_seconds = seconds_since(start);

    // Individual support identification and LS refit, independently per user.
    const double stop_energy = noise_floor_energy(cfg.eta2, num_rx, num_tx, power);
    const std::size_t extra = s - s_c;
    report.individual.reserve(users);
    report.angular.reserve(users);
    for (std::size_t i = 0; i < users; ++i) {
        const auto user_start = Clock::now();
        Pursuit p{report.common, common_basis, std::move(residual[i])};
        extend_greedy(p, ybar[i], xbar, extra, stop_energy, i, trace);
        report.angular.push_back(refit(ybar[i], xbar, p.support, cfg.tolerances));
        report.residual_norms.push_back(p.residual.norm());
        report.individual.push_back(std::move(p.support));
        report.user_seconds.push_back(common_seconds / static_cast<double>(users) + seconds_since(user_start));
    }
    report.total_seconds = seconds_since(start);
    return report;
}

SparseEstimate somp_single(const ComplexMatrix& ybar, const ComplexMatrix& xbar, std::size_t max_iters,
                           double stop_energy, const NumericTolerances& tol, GreedyTrace* trace) {
    check_shapes(ybar, xbar);
    require(max_iters <= static_cast<std::size_t>(xbar.rows()), "somp: max_iters must not exceed T");
    Pursuit p{IndexSet{}, IncrementalBasis(xbar.rows(), tol), ybar};
    extend_greedy(p, ybar, xbar, max_iters, stop_energy, 0, trace);
    SparseEstimate out;
    out.angular = refit(ybar, xbar, p.support, tol);
    out.residual_norm = p.residual.norm();
    out.support = std::move(p.support);
    return out;
}

SparseEstimate omp_single(const ComplexMatrix& ybar, const ComplexMatrix& xbar, std::size_t max_iters,
                          double stop_energy, const NumericTolerances& tol) {
    check_shapes(ybar, xbar);
    require(max_iters <= static_cast<std::size_t>(xbar.rows()), "omp: max_iters must not exceed T");
    const double column_stop = stop_energy / static_cast<double>(ybar.cols());
    IndexSet merged;
    for (Eigen::Index l = 0; l < ybar.cols(); ++l) {
        const ComplexMatrix column = ybar.col(l);
        Pursuit p{IndexSet{}, IncrementalBasis(xbar.rows(), tol), column};
        extend_greedy(p, column, xbar, max_iters, column_stop, 0, nullptr);
        merged = merged.set_union(p.support);
    }
    SparseEstimate out;
    out.angular = refit(ybar, xbar, merged, tol);
    out.residual_norm = (ybar - xbar * out.angular).norm();
    out.support = std::move(merged);
    return out;
}

SparseEstimate genie_ls(const ComplexMatrix& ybar, const ComplexMatrix& xbar, const IndexSet& support,
                        const NumericTolerances& tol) {
    check_shapes(ybar, xbar);
    require(!support.empty(), "genie_ls: support must be nonempty");
    require(support.size() <= static_cast<std::size_t>(xbar.rows()), "genie_ls: |support| must not exceed T");
    require(support.all_below(static_cast<std::size_t>(xbar.cols())), "genie_ls: support index out of range");
    SparseEstimate out;
    out.support = support;
    out.angular = refit(ybar, xbar, support, tol);
    out.residual_norm = (ybar - xbar * out.angular).norm();
    return out;
}

LsEstimator::LsEstimator(const ComplexMatrix& pilots, const NumericTolerances& tol)
    : pinv_(pseudo_inverse(pilots, tol)) {}

ComplexMatrix LsEstimator::apply(const ComplexMatrix& observation) const {
    require(observation.cols() == pinv_.rows(), "ls: Y must have T columns");
    return observation * pinv_;
}

ComplexMatrix ls_full(const ComplexMatrix& observation, const ComplexMatrix& pilots,
                      const NumericTolerances& tol) {
    return LsEstimator(pilots, tol).apply(observation);
}

ComplexMatrix angular_estimate_to_antenna(const ComplexMatrix& angular_estimate,
                                          const ComplexMatrix& rx_basis, const ComplexMatrix& tx_basis) {
    return rx_basis * angular_estimate.adjoint() * tx_basis.adjoint();
}

void attach_antenna_estimates(RecoveryReport& report, const ComplexMatrix& rx_basis,
                              const ComplexMatrix& tx_basis) {
    report.antenna.clear();
    for (const auto& a : report.angular)
        report.antenna.push_back(angular_estimate_to_antenna(a, rx_basis, tx_basis));
}

} // namespace jomp

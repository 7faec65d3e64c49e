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

#include "jomp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "jomp/error.hpp"

namespace jomp {

IndexSet::IndexSet(std::initializer_list<std::size_t> indices)
    : IndexSet(std::vector<std::size_t>(indices)) {}

IndexSet::IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        fail(ErrorCode::InvalidConfig, "IndexSet: duplicate index");
}

IndexSet IndexSet::range(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return IndexSet(std::move(v));
}

bool IndexSet::contains(std::size_t index) const noexcept {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool IndexSet::insert(std::size_t index) {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
    if (it != indices_.end() && *it == index)
        return false;
    indices_.insert(it, index);
    return true;
}

bool IndexSet::is_subset_of(const IndexSet& other) const noexcept {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                         indices_.end());
}

bool IndexSet::all_below(std::size_t dim) const noexcept {
    return indices_.empty() || indices_.back() < dim;
}

IndexSet IndexSet::intersection(const IndexSet& other) const {
    IndexSet out;
    std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                          other.indices_.end(), std::back_inserter(out.indices_));
    return out;
}

IndexSet IndexSet::set_union(const IndexSet& other) const {
    IndexSet out;
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                   other.indices_.end(), std::back_inserter(out.indices_));
    return out;
}

ComplexMatrix dft_unitary(std::size_t n) {
    require(n >= 1, "dft_unitary: n must be >= 1");
    const auto dim = static_cast<Eigen::Index>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix u(dim, dim);
    for (Eigen::Index p = 0; p < dim; ++p) {
        for (Eigen::Index q = 0; q < dim; ++q) {
            // reduce p*q mod n first so the phase stays accurate for large n
            const auto k = static_cast<double>((p * q) % dim);
            const double phase = -2.0 * std::numbers::pi * k / static_cast<double>(n);
            u(p, q) = std::polar(scale, phase);
        }
    }
    return u;
}

ComplexMatrix select_columns(const ComplexMatrix& a, const IndexSet& columns) {
    require(columns.all_below(static_cast<std::size_t>(a.cols())),
            "select_columns: index out of range");
    ComplexMatrix out(a.rows(), static_cast<Eigen::Index>(columns.size()));
    Eigen::Index c = 0;
    for (auto j : columns)
        out.col(c++) = a.col(static_cast<Eigen::Index>(j));
    return out;
}

bool all_finite(const ComplexMatrix& a) noexcept {
    return a.allFinite();
}

SubspaceProjector::SubspaceProjector(const ComplexMatrix& a, const NumericTolerances& tol) {
    if (a.cols() == 0 || a.rows() == 0) {
        basis_.resize(a.rows(), 0);
        pinv_.resize(a.cols(), a.rows());
        pinv_.setZero();
        return;
    }
    if (!all_finite(a))
        fail(ErrorCode::NumericalFailure, "rank-revealing factorization: non-finite input");

    Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        fail(ErrorCode::NumericalFailure, "rank-revealing factorization did not converge");

    const auto& sv = svd.singularValues();
    const double cutoff = tol.rank_cutoff * (sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff && sv(rank) > 0.0)
        ++rank;

    basis_ = svd.matrixU().leftCols(rank);
    pinv_ = svd.matrixV().leftCols(rank) *
            sv.head(rank).cwiseInverse().asDiagonal() *
            svd.matrixU().leftCols(rank).adjoint();
    if (!all_finite(basis_) || !all_finite(pinv_))
        fail(ErrorCode::NumericalFailure, "rank-revealing factorization produced non-finite output");
}

ComplexMatrix SubspaceProjector::residual(const ComplexMatrix& y) const {
    if (basis_.cols() == 0)
        return y;
    return y - basis_ * (basis_.adjoint() * y);
}

ComplexMatrix SubspaceProjector::coefficients(const ComplexMatrix& y) const {
    return pinv_ * y;
}

IncrementalBasis::IncrementalBasis(Eigen::Index rows, const NumericTolerances& tol)
    : q_(rows, rows), cutoff_(tol.rank_cutoff) {}

bool IncrementalBasis::append(const Eigen::Ref<const Eigen::VectorXcd>& column) {
    if (column.size() != q_.rows())
        fail(ErrorCode::InvalidConfig, "IncrementalBasis: column length mismatch");
    const double norm0 = column.norm();
    if (!std::isfinite(norm0))
        fail(ErrorCode::NumericalFailure, "IncrementalBasis: non-finite column");
    if (rank_ == q_.rows() || norm0 == 0.0)
        return false;
    Eigen::VectorXcd v = column;
    for (int pass = 0; pass < 2; ++pass) {
        if (rank_ > 0) {
            const auto q = q_.leftCols(rank_);
            v -= q * (q.adjoint() * v);
        }
    }
    const double remainder = v.norm();
    if (remainder <= cutoff_ * norm0)
        return false;
    q_.col(rank_++) = v / remainder;
    return true;
}

ComplexMatrix IncrementalBasis::residual(const ComplexMatrix& y) const {
    if (rank_ == 0)
        return y;
    const auto q = q_.leftCols(rank_);
    return y - q * (q.adjoint() * y);
}

void IncrementalBasis::deflate(ComplexMatrix& r) const {
    if (rank_ == 0)
        return;
    const auto q = q_.col(rank_ - 1);
    r -= q * (q.adjoint() * r);
}

ComplexMatrix ls_solve(const ComplexMatrix& a, const ComplexMatrix& b, const NumericTolerances& tol) {
    require(a.rows() == b.rows(), "ls_solve: row counts differ");
    // Full column rank: the unique LS solution, from a pivoted QR.
    if (a.cols() > 0 && a.cols() <= a.rows() && all_finite(a)) {
        Eigen::ColPivHouseholderQR<ComplexMatrix> qr(a);
        qr.setThreshold(tol.rank_cutoff);
        if (qr.rank() == a.cols())
            return qr.solve(b);
    }
    SubspaceProjector factor(a, tol);
    return factor.coefficients(b);
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, const NumericTolerances& tol) {
    SubspaceProjector factor(a, tol);
    return factor.coefficients(ComplexMatrix::Identity(a.rows(), a.rows()));
}

ComplexMatrix projection(const ComplexMatrix& xbar, const IndexSet& omega, const NumericTolerances& tol) {
    require(!omega.empty(), "projection: empty support");
    require(omega.all_below(static_cast<std::size_t>(xbar.cols())), "projection: index out of range");
    SubspaceProjector factor(select_columns(xbar, omega), tol);
    return factor.projector();
}

MatrixNorms norms(const ComplexMatrix& a, const NumericTolerances& tol) {
    require(a.size() > 0, "norms: empty matrix");
    MatrixNorms out;
    out.frobenius = a.norm();
    if (out.frobenius == 0.0)
        return out;

    // Power iteration on the Gram matrix of the smaller side.
    const ComplexMatrix gram = a.rows() < a.cols() ? ComplexMatrix(a * a.adjoint())
                                                   : ComplexMatrix(a.adjoint() * a);
    Eigen::VectorXcd v(gram.rows());
    // deterministic, generic start vector
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Complex(1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i) + 0.5),
                       0.21 * std::cos(0.7 * static_cast<double>(i)));
    v.normalize();

    for (int iter = 0; iter < tol.power_iteration_max; ++iter) {
        Eigen::VectorXcd w = gram * v;
        const double lambda = std::real(v.dot(w));
        const double res = (w - lambda * v).norm();
        if (res <= tol.power_iteration_tol * std::max(lambda, 1e-300)) {
            out.spectral = std::sqrt(std::max(lambda, 0.0));
            return out;
        }
        const double wn = w.norm();
        if (!(wn > 0.0) || !std::isfinite(wn))
            fail(ErrorCode::NumericalFailure, "norms: power iteration broke down");
        v = w / wn;
    }
    fail(ErrorCode::NumericalFailure,
         "norms: spectral power iteration did not converge in " +
             std::to_string(tol.power_iteration_max) + " iterations");
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::EmptyVote: return "EmptyVote";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

} // namespace jomp

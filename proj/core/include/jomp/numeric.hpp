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

#ifndef JOMP_NUMERIC_HPP
#define JOMP_NUMERIC_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace jomp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Numerical knobs shared by the dense primitives. The defaults are the module
// constants; the harness may override them from its configuration.
struct NumericTolerances {
    double rank_cutoff = 1e-10;       // relative to the largest singular value
    double power_iteration_tol = 1e-13;
    int power_iteration_max = 20000;
};

// Ordered, duplicate-free set of column (or row) indices, 0-based.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::initializer_list<std::size_t> indices);
    explicit IndexSet(std::vector<std::size_t> indices);

    static IndexSet range(std::size_t n);

    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(std::size_t index) const noexcept;

    // Returns false if the index was already present.
    bool insert(std::size_t index);

    bool is_subset_of(const IndexSet& other) const noexcept;
    bool all_below(std::size_t dim) const noexcept;

    IndexSet intersection(const IndexSet& other) const;
    IndexSet set_union(const IndexSet& other) const;

    const std::vector<std::size_t>& values() const noexcept { return indices_; }
    std::size_t operator[](std::size_t pos) const { return indices_[pos]; }
    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::vector<std::size_t> indices_;
};

struct MatrixNorms {
    double frobenius = 0.0;
    double spectral = 0.0;
};

// n x n unitary DFT, U(p, q) = exp(-2 pi i p q / n) / sqrt(n).
ComplexMatrix dft_unitary(std::size_t n);

// Gathers the columns of `a` listed in `columns`, in set order.
ComplexMatrix select_columns(const ComplexMatrix& a, const IndexSet& columns);

// Minimum-norm minimizer of ||B - A Z||_F. Directions with singular value below
// rank_cutoff * sigma_max are dropped.
ComplexMatrix ls_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                       const NumericTolerances& tol = {});

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, const NumericTolerances& tol = {});

// P = Xbar_omega (Xbar_omega)^dagger, the orthogonal projector onto span of the
// selected columns.
ComplexMatrix projection(const ComplexMatrix& xbar, const IndexSet& omega,
                         const NumericTolerances& tol = {});

MatrixNorms norms(const ComplexMatrix& a, const NumericTolerances& tol = {});

bool all_finite(const ComplexMatrix& a) noexcept;

// Orthonormal basis of the column span of `a` together with the pseudoinverse,
// both taken from one rank-revealing factorization. Greedy pursuits rebuild one
// of these each time their support grows.
class SubspaceProjector {
public:
    SubspaceProjector() = default;
    SubspaceProjector(const ComplexMatrix& a, const NumericTolerances& tol = {});

    Eigen::Index rank() const noexcept { return basis_.cols(); }
    const ComplexMatrix& basis() const noexcept { return basis_; }

    // (I - P) y
    ComplexMatrix residual(const ComplexMatrix& y) const;
    // a^dagger y
    ComplexMatrix coefficients(const ComplexMatrix& y) const;
    ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

private:
    ComplexMatrix basis_;   // rows x rank
    ComplexMatrix pinv_;    // cols x rows
};

// Orthonormal basis grown one column at a time (Gram-Schmidt with one
// re-orthogonalization pass). A column whose orthogonal remainder falls below
// rank_cutoff * its norm is treated as linearly dependent and not added.
class IncrementalBasis {
public:
    explicit IncrementalBasis(Eigen::Index rows, const NumericTolerances& tol = {});

    // Returns false if the column is (numerically) in the current span.
    bool append(const Eigen::Ref<const Eigen::VectorXcd>& column);

    Eigen::Index rank() const noexcept { return rank_; }
    auto basis() const { return q_.leftCols(rank_); }

    // (I - P) y with P the projector onto the current span.
    ComplexMatrix residual(const ComplexMatrix& y) const;

    // Removes the newest basis direction from r, where r is already orthogonal
    // to all earlier directions.
    void deflate(ComplexMatrix& r) const;

private:
    ComplexMatrix q_;
    Eigen::Index rank_ = 0;
    double cutoff_;
};

} // namespace jomp

#endif

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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jomp/error.hpp"
#include "jomp/numeric.hpp"
#include "jomp/rng.hpp"
#include "support.hpp"

using namespace jomp;
using jomp::testing::rademacher;
using jomp::testing::random_matrix;

namespace {

double max_abs(const ComplexMatrix& a) {
    return a.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("dft_unitary closed forms") {
    const ComplexMatrix u1 = dft_unitary(1);
    CHECK(u1.rows() == 1);
    CHECK(std::abs(u1(0, 0) - Complex(1.0, 0.0)) < 1e-15);

    const ComplexMatrix u2 = dft_unitary(2);
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix expect(2, 2);
    expect << r, r, r, -r;
    CHECK(max_abs(u2 - expect) < 1e-15);

    const ComplexMatrix u8 = dft_unitary(8);
    CHECK(max_abs(u8.adjoint() * u8 - ComplexMatrix::Identity(8, 8)) < 1e-12);
}

TEST_CASE("dft_unitary matches the defining exponential and is unitary up to n = 256") {
    for (std::size_t n = 1; n <= 256; ++n) {
        const ComplexMatrix u = dft_unitary(n);
        const auto d = static_cast<Eigen::Index>(n);
        REQUIRE(max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d)) < 1e-10);
    }
    const ComplexMatrix u = dft_unitary(12);
    for (int p = 0; p < 12; ++p)
        for (int q = 0; q < 12; ++q) {
            const Complex ref = std::exp(Complex(0.0, -2.0 * std::numbers::pi * p * q / 12.0)) / std::sqrt(12.0);
            CHECK(std::abs(u(p, q) - ref) < 1e-14);
        }
    CHECK_THROWS_AS(dft_unitary(0), Error);
}

TEST_CASE("ls_solve examples") {
    SeededRng rng(11);
    const ComplexMatrix b = random_matrix(2, 3, rng);
    CHECK(max_abs(ls_solve(ComplexMatrix::Identity(2, 2), b) - b) < 1e-14);

    ComplexMatrix a(2, 1);
    a << 1.0, 1.0;
    ComplexMatrix y(2, 1);
    y << 1.0, 3.0;
    const ComplexMatrix z = ls_solve(a, y);
    CHECK(std::abs(z(0, 0) - Complex(2.0, 0.0)) < 1e-14);

    const ComplexMatrix a12 = random_matrix(12, 4, rng);
    const ComplexMatrix z0 = random_matrix(4, 3, rng);
    const ComplexMatrix rec = ls_solve(a12, a12 * z0);
    CHECK((rec - z0).norm() / z0.norm() < 1e-10);
}

TEST_CASE("ls_solve gives the minimum-norm solution of underdetermined systems") {
    SeededRng rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_matrix(5, 9, rng);
        const ComplexMatrix b = random_matrix(5, 2, rng);
        // min-norm oracle through the row Gram matrix
        const ComplexMatrix ref = a.adjoint() * (a * a.adjoint()).ldlt().solve(b);
        CHECK((ls_solve(a, b) - ref).norm() < 1e-9 * ref.norm());
    }
}

TEST_CASE("ls_solve handles exact rank deficiency with the min-norm convention") {
    SeededRng rng(13);
    ComplexMatrix a = random_matrix(8, 3, rng);
    a.col(2) = a.col(0) * Complex(2.0, -1.0);
    const ComplexMatrix b = random_matrix(8, 2, rng);
    const ComplexMatrix z = ls_solve(a, b);
    // the oracle: LS on the independent columns, then spread over the null-space-orthogonal combination
    const ComplexMatrix pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    CHECK((z - pinv * b).norm() < 1e-9 * (pinv * b).norm());
}

TEST_CASE("ls_solve residual is orthogonal to the range") {
    SeededRng rng(14);
    for (int rep = 0; rep < 50; ++rep) {
        std::uniform_int_distribution<int> dim(1, 10);
        const int rows = dim(rng);
        const int cols = dim(rng);
        const ComplexMatrix a = random_matrix(rows, cols, rng);
        const ComplexMatrix b = random_matrix(rows, 2, rng);
        const ComplexMatrix z = ls_solve(a, b);
        CHECK((a.adjoint() * (b - a * z)).norm() < 1e-8 * b.norm());
    }
}

TEST_CASE("ls_solve rejects mismatched shapes and non-finite input") {
    CHECK_THROWS_AS(ls_solve(ComplexMatrix::Identity(3, 3), ComplexMatrix::Zero(2, 1)), Error);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = Complex(std::nan(""), 0.0);
    try {
        ls_solve(bad, ComplexMatrix::Zero(2, 1));
        FAIL("expected NumericalFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NumericalFailure);
    }
}

TEST_CASE("projection examples") {
    const ComplexMatrix q = dft_unitary(6).leftCols(4);
    const ComplexMatrix p0 = projection(q, IndexSet{0});
    CHECK(max_abs(p0 - q.col(0) * q.col(0).adjoint()) < 1e-12);

    SeededRng rng(21);
    const ComplexMatrix sq = random_matrix(5, 5, rng);
    CHECK(max_abs(projection(sq, IndexSet::range(5)) - ComplexMatrix::Identity(5, 5)) < 1e-10);

    const ComplexMatrix x = rademacher(16, 32, rng);
    const ComplexMatrix p = projection(x, IndexSet{1, 7, 20, 31});
    CHECK((p * p - p).norm() < 1e-10);

    CHECK_THROWS_AS(projection(x, IndexSet{}), Error);
    CHECK_THROWS_AS(projection(x, IndexSet{32}), Error);
}

TEST_CASE("projection is a self-adjoint idempotent that annihilates its columns' complement") {
    SeededRng rng(22);
    for (int rep = 0; rep < 100; ++rep) {
        const ComplexMatrix x = rademacher(12, 30, rng);
        std::vector<std::size_t> pool(30);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        std::shuffle(pool.begin(), pool.end(), rng);
        std::uniform_int_distribution<std::size_t> size(1, 12);
        const std::size_t k = size(rng);
        const IndexSet omega(std::vector<std::size_t>(pool.begin(), pool.begin() + static_cast<long>(k)));
        const ComplexMatrix p = projection(x, omega);
        CHECK((p - p.adjoint()).norm() < 1e-10);
        CHECK((p * p - p).norm() < 1e-10);
        const ComplexMatrix xo = select_columns(x, omega);
        CHECK(((ComplexMatrix::Identity(12, 12) - p) * xo).norm() < 1e-10);
    }
}

TEST_CASE("norms examples") {
    const MatrixNorms z = norms(ComplexMatrix::Zero(3, 2));
    CHECK(z.frobenius == 0.0);
    CHECK(z.spectral == 0.0);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 4.0;
    const MatrixNorms n = norms(d);
    CHECK(n.frobenius == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(n.spectral == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("spectral norm matches an SVD oracle") {
    SeededRng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        std::uniform_int_distribution<int> dim(1, 12);
        const ComplexMatrix a = random_matrix(dim(rng), dim(rng), rng);
        const double sv = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0);
        const MatrixNorms n = norms(a);
        CHECK(std::abs(n.spectral - sv) <= 1e-8 * sv);
        CHECK(n.frobenius >= n.spectral * (1.0 - 1e-12));
        CHECK(n.spectral >= n.frobenius / std::sqrt(static_cast<double>(std::min(a.rows(), a.cols()))) *
                                (1.0 - 1e-12));
    }
}

TEST_CASE("norms reports a bounded iteration failure") {
    SeededRng rng(32);
    const ComplexMatrix a = random_matrix(6, 6, rng);
    NumericTolerances tol;
    tol.power_iteration_max = 1;
    tol.power_iteration_tol = 1e-300;
    try {
        norms(a, tol);
        FAIL("expected NumericalFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NumericalFailure);
    }
    CHECK_THROWS_AS(norms(ComplexMatrix(0, 0)), Error);
}

TEST_CASE("IndexSet keeps a sorted duplicate-free list") {
    IndexSet s{5, 1, 3};
    CHECK(s.values() == std::vector<std::size_t>{1, 3, 5});
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    CHECK(s.insert(2));
    CHECK_FALSE(s.insert(2));
    CHECK(s.values() == std::vector<std::size_t>{1, 2, 3, 5});
    CHECK(IndexSet{1, 3}.is_subset_of(s));
    CHECK_FALSE(IndexSet{1, 4}.is_subset_of(s));
    CHECK(IndexSet{}.is_subset_of(s));
    CHECK(s.intersection(IndexSet{0, 3, 5, 9}) == IndexSet{3, 5});
    CHECK(s.set_union(IndexSet{0, 9}) == IndexSet{0, 1, 2, 3, 5, 9});
    CHECK(s.all_below(6));
    CHECK_FALSE(s.all_below(5));
    CHECK_THROWS_AS(IndexSet({1, 1}), Error);
}

TEST_CASE("IncrementalBasis spans the appended columns") {
    SeededRng rng(41);
    const ComplexMatrix x = random_matrix(7, 5, rng);
    IncrementalBasis basis(7);
    for (Eigen::Index c = 0; c < 5; ++c)
        CHECK(basis.append(x.col(c)));
    CHECK(basis.rank() == 5);
    CHECK_FALSE(basis.append(x.col(0) * 2.0 + x.col(3)));
    const ComplexMatrix y = random_matrix(7, 3, rng);
    const ComplexMatrix p = projection(x, IndexSet::range(5));
    CHECK((basis.residual(y) - (y - p * y)).norm() < 1e-10 * y.norm());
}

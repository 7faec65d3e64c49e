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

#ifndef JOMP_TESTS_SUPPORT_HPP
#define JOMP_TESTS_SUPPORT_HPP

#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "jomp/numeric.hpp"
#include "jomp/rng.hpp"

namespace jomp::testing {

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
    return complex_gaussian_matrix(rows, cols, rng);
}

// T x M matrix with i.i.d. entries +-1/sqrt(T), built without the library's pilot code.
inline ComplexMatrix rademacher(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
    std::bernoulli_distribution coin(0.5);
    const double a = 1.0 / std::sqrt(static_cast<double>(rows));
    ComplexMatrix x(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            x(r, c) = coin(rng) ? a : -a;
    return x;
}

// Calls f(subset) for every k-subset of {0, ..., n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

struct ExhaustiveFit {
    std::vector<std::size_t> support;
    double residual = std::numeric_limits<double>::infinity();
};

// Smallest-size support whose LS fit leaves residual below `tol`; among
// supports of that size, the one with the smallest residual. Solved with
// Householder QR on the explicit column subset.
inline ExhaustiveFit exhaustive_support(const ComplexMatrix& ybar, const ComplexMatrix& xbar,
                                        std::size_t max_size, double tol) {
    ExhaustiveFit best;
    const auto m = static_cast<std::size_t>(xbar.cols());
    for (std::size_t k = 1; k <= max_size; ++k) {
        for_each_subset(m, k, [&](const std::vector<std::size_t>& s) {
            ComplexMatrix a(xbar.rows(), static_cast<Eigen::Index>(k));
            for (std::size_t c = 0; c < k; ++c)
                a.col(static_cast<Eigen::Index>(c)) = xbar.col(static_cast<Eigen::Index>(s[c]));
            const ComplexMatrix z = a.householderQr().solve(ybar);
            const double r = (ybar - a * z).norm();
            if (r < best.residual) {
                best.residual = r;
                best.support = s;
            }
        });
        if (best.residual <= tol)
            return best;
    }
    return best;
}

} // namespace jomp::testing

#endif

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

#ifndef JOMP_TESTS_BOUNDS_ORACLE_HPP
#define JOMP_TESTS_BOUNDS_ORACLE_HPP

// Extended-precision (50 decimal digits) re-derivation of the bound formulas,
// written from the formulas directly: exact binomial coefficients, plain
// summation, no log-space tricks.

#include <algorithm>
#include <cstddef>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "jomp/bounds.hpp"

namespace jomp::oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline mp choose(std::size_t n, std::size_t k) {
    if (k > n)
        return mp(0);
    mp c = 1;
    for (std::size_t i = 1; i <= k; ++i)
        c = c * mp(n - k + i) / mp(i);
    return c;
}

inline mp sum_choose(std::size_t n, std::size_t lo, std::size_t hi) {
    mp s = 0;
    for (std::size_t t = lo; t <= hi && t <= n; ++t)
        s += choose(n, t);
    return s;
}

inline mp theta(const BoundInputs& in, mp eta2) {
    using boost::multiprecision::sqrt;
    const mp d1 = in.delta_1, ds = in.delta_s, ds1 = in.delta_s1;
    const mp a = sqrt((1 + d1) * eta2 * mp(in.num_tx) / mp(in.power));
    const mp r1 = sqrt(mp(in.eta1));
    const mp t1 = (1 - 2 * ds) / (ds1 + 2 * (1 - ds) * a);
    const mp t2 = (1 - 2 * ds) * (1 - 2 * ds) / ((1 - ds) * (1 - ds) * (r1 + a) * (r1 + a));
    mp t3;
    if (r1 <= a)
        t3 = 0;
    else if (ds1 == 0)
        t3 = mp(1e300);
    else
        t3 = (r1 - a) * (r1 - a) * (1 - ds) * (1 - ds) / (ds1 * ds1);
    return std::min({t1, t2, t3});
}

inline mp p_of(const BoundInputs& in, mp th, mp eta2) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    const mp n = in.num_rx;
    return 2 * exp(-n * (log(th) - 1 + 1 / th)) + mp(in.num_tx) * exp(-n * (th - 1 - log(th))) +
           exp(-n * mp(in.slots) * (eta2 - log(eta2) - 1));
}

inline mp pr_common_raw(const BoundInputs& in, mp p) {
    using boost::multiprecision::ceil;
    using boost::multiprecision::pow;
    const mp c0 = sum_choose(in.s, 0, in.s_c) - 1;
    const auto upper = static_cast<std::size_t>(ceil((1 + mp(in.gamma)) * mp(in.num_users) / 2));
    mp sum = 0;
    for (std::size_t t = 0; t <= std::min(upper, in.num_users); ++t)
        sum += choose(in.num_users, t) * pow(1 - p, static_cast<int>(t)) *
               pow(p, static_cast<int>(in.num_users - t));
    return 1 - 2 * c0 * sum;
}

inline mp vartheta(const BoundInputs& in) {
    return (1 - mp(in.delta_s)) * mp(in.power) / (4 * mp(in.eta2) * mp(in.num_tx));
}

inline mp pr_individual_raw(const BoundInputs& in, mp th) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    const mp n = in.num_rx;
    const mp ci = sum_choose(in.s, in.s_c, in.s) - 1;
    const mp vt = vartheta(in);
    const mp e2 = in.eta2;
    return 1 - ci * exp(-n * (log(th) - 1 + 1 / th)) - ci * mp(in.num_tx) * exp(-n * (th - 1 - log(th))) -
           mp(in.s) * exp(-n * (log(vt) - 1 + 1 / vt)) - exp(-n * mp(in.slots) * (e2 - log(e2) - 1));
}

inline mp nmae(const BoundInputs& in, mp pr_c, mp pr_i) {
    using boost::multiprecision::sqrt;
    const mp n = in.num_rx;
    const mp ds = in.delta_s;
    const mp first = sqrt(mp(in.num_tx) * n * mp(in.s) / (mp(in.power) * mp(in.slots) * (1 - ds))) *
                     boost::math::tgamma(n - mp(0.5)) / boost::math::tgamma(n);
    const mp misfit = (1 - ds + mp(in.delta_2s)) / (1 - ds);
    return first + (1 - pr_c) * misfit + (1 - pr_i) * misfit +
           mp(in.epsilon) * (1 + sqrt((1 + mp(in.delta_1)) / (1 - ds)));
}

inline mp beta1(const BoundInputs& in, mp th) {
    using boost::multiprecision::log;
    const mp e2 = in.eta2;
    return std::min({log(th) - 1 + 1 / th, th - 1 - log(th), mp(in.slots) * (e2 - log(e2) - 1)});
}

inline mp beta2(const BoundInputs& in, mp th) {
    using boost::multiprecision::log;
    const mp vt = vartheta(in);
    return std::min(beta1(in, th), log(vt) - 1 + 1 / vt);
}

inline mp user_rate(const BoundInputs& in, mp p) {
    using boost::multiprecision::log;
    const mp g = in.gamma;
    return (1 - g) / 2 * log((1 - p) * (1 - g) / (p * (1 + g))) - log(2 * (1 - p) / (1 + g));
}

inline mp high_snr(const BoundInputs& in) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    using boost::multiprecision::sqrt;
    const mp e2 = sqrt(mp(in.power));
    const mp th = theta(in, e2);
    const mp n = in.num_rx;
    const mp ds = in.delta_s;
    const mp e = (1 - ds + mp(in.delta_2s)) / (1 - ds) *
                 (exp(-n * (log(th) - 1 + 1 / th)) + mp(in.num_tx) * exp(-n * (th - 1 - log(th))));
    return (sum_choose(in.s, in.s_c, in.s) - 1) * e;
}

inline mp chernoff(mp k, mp x) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    return exp(-k * (x - 1 - log(x)));
}

// Kullback-Leibler divergence D(K2/K || 1 - p), written in its textbook form.
inline mp kl_rate(mp p, std::size_t k, std::size_t k2) {
    using boost::multiprecision::log;
    const mp b = mp(k2) / mp(k);
    return b * log(b / (1 - p)) + (1 - b) * log((1 - b) / p);
}

inline mp binomial_tail(mp p, std::size_t k, std::size_t upper) {
    using boost::multiprecision::pow;
    mp sum = 0;
    for (std::size_t t = 0; t <= upper; ++t)
        sum += choose(k, t) * pow(1 - p, static_cast<int>(t)) * pow(p, static_cast<int>(k - t));
    return sum;
}

inline double rel_err(double got, const mp& ref) {
    using boost::multiprecision::abs;
    const mp diff = abs(mp(got) - ref);
    const mp scale = abs(ref);
    if (scale == 0)
        return static_cast<double>(diff);
    return static_cast<double>(diff / scale);
}

} // namespace jomp::oracle

#endif

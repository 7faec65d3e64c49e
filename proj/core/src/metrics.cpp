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

#include "jomp/metrics.hpp"

#include "jomp/error.hpp"

namespace jomp {

namespace {

double error_ratio_squared(const ComplexMatrix& truth, const ComplexMatrix& estimate) {
    require(truth.rows() == estimate.rows() && truth.cols() == estimate.cols(),
            "metrics: shape mismatch between reference and estimate");
    const double ref = truth.squaredNorm();
    require(ref > 0.0, "metrics: reference channel is zero");
    return (truth - estimate).squaredNorm() / ref;
}

} // namespace

double nmse(const ComplexMatrix& truth, const ComplexMatrix& estimate) {
    return error_ratio_squared(truth, estimate);
}

double nmae(const ComplexMatrix& truth, const ComplexMatrix& estimate) {
    require(truth.rows() == estimate.rows() && truth.cols() == estimate.cols(),
            "metrics: shape mismatch between reference and estimate");
    const double ref = truth.norm();
    require(ref > 0.0, "metrics: reference channel is zero");
    return (truth - estimate).norm() / ref;
}

SupportEvents detect_events(const JointSupport& truth, const RecoveryReport& report) {
    require(report.individual.size() == truth.individual.size(), "detect_events: user count mismatch");
    SupportEvents out;
    out.theta_c = report.common.is_subset_of(truth.common);
    out.theta_i.reserve(truth.individual.size());
    for (std::size_t i = 0; i < truth.individual.size(); ++i)
        out.theta_i.push_back(report.individual[i] == truth.individual[i]);
    return out;
}

} // namespace jomp

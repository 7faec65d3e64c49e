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

#ifndef JOMP_METRICS_HPP
#define JOMP_METRICS_HPP

#include <vector>

#include "jomp/channel.hpp"
#include "jomp/numeric.hpp"
#include "jomp/recovery.hpp"

namespace jomp {

struct SupportEvents {
    bool theta_c = false;         // estimated common support inside the true one
    std::vector<bool> theta_i;    // per-user exact support recovery
};

struct TrialMetrics {
    std::vector<double> nmse;
    std::vector<double> nmae;
    bool theta_c = false;
    std::vector<bool> theta_i;
    std::vector<double> per_user_time;  // seconds
};

// ||H - He||_F^2 / ||H||_F^2
double nmse(const ComplexMatrix& truth, const ComplexMatrix& estimate);

// ||H - He||_F / ||H||_F
double nmae(const ComplexMatrix& truth, const ComplexMatrix& estimate);

SupportEvents detect_events(const JointSupport& truth, const RecoveryReport& report);

} // namespace jomp

#endif

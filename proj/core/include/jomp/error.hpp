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

#ifndef JOMP_ERROR_HPP
#define JOMP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace jomp {

enum class ErrorCode {
    InvalidConfig,
    NumericalFailure,
    SamplingExhausted,
    EmptyVote,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this one exception type; the code
// is what callers (and the CLI's machine-readable error line) dispatch on.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, const std::string& message) {
    if (!condition)
        throw Error(ErrorCode::InvalidConfig, message);
}

} // namespace jomp

#endif

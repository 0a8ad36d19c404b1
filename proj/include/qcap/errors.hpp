// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCAP_ERRORS_HPP
#define QCAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcap {

/// The channel touches the boundary of the positive cone, so no Sinkhorn
/// scaling with positive definite A, B exists.
struct NotInterior : std::domain_error {
    explicit NotInterior(const std::string &what) : std::domain_error(what) {
    }
};

/// The Choi matrix has a negative eigenvalue beyond tolerance.
struct NotCompletelyPositive : std::domain_error {
    explicit NotCompletelyPositive(const std::string &what) : std::domain_error(what) {
    }
};

struct NotUnital : std::domain_error {
    explicit NotUnital(const std::string &what) : std::domain_error(what) {
    }
};

struct NotTracePreserving : std::domain_error {
    explicit NotTracePreserving(const std::string &what) : std::domain_error(what) {
    }
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace qcap

#endif

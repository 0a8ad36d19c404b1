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

#ifndef QCAP_VERIFY_HPP
#define QCAP_VERIFY_HPP

// Randomized invariant suites behind `qcap verify`, plus the random
// instance generators they share with the tests.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcap/core.hpp"
#include "qcap/optimize.hpp"

namespace qcap {

/// Channel with four random Kraus operators (an 8x2 isometry from a Gaussian matrix).
QubitChannel random_channel(Rng &rng);

/// Uniform on [-1, 1]^4 conditioned on CP and |t3| + |lambda3| < 1 - margin.
PauliChannelParams random_family_point(Rng &rng, double margin = 0);

/// Uniform in the Bloch ball.
BlochVector random_bloch(Rng &rng);

struct PropertyResult {
    std::string suite;
    std::string name;
    long checked = 0;
    long failed = 0;
    double max_deviation = 0;
    double tolerance = 0;

    bool passed() const {
        return failed == 0 && checked > 0;
    }
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;

    bool passed() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// suite is core | sinkhorn | capacity | protocol | all; anything else
/// throws std::invalid_argument. `inject_fault` perturbs the scaling
/// operators (and the core round trip) by 1e-3 so every suite must fail.
VerificationReport run_verification(const std::string &suite, std::uint64_t seed, bool inject_fault = false);

}  // namespace qcap

#endif

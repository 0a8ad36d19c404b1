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

#ifndef QCAP_OPTIMIZE_HPP
#define QCAP_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace qcap {

struct NelderMeadOptions {
    /// Initial simplex edge length along every coordinate.
    double initial_step = 0.5;
    /// Stop once the simplex diameter (max distance from the best vertex) drops below this.
    double step_tol = 1e-9;
    /// Stop once the objective spread over the simplex drops below this.
    double value_tol = 1e-15;
    int max_evaluations = 20000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Minimizes `f` with the Nelder-Mead downhill simplex (standard coefficients
/// 1, 2, 0.5, 0.5). Deterministic for a fixed start.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double> &)> &f,
    std::vector<double> start,
    const NelderMeadOptions &options = {});

/// SplitMix64-seeded xoshiro256** generator. Platform-independent output, so
/// seeded runs are reproducible bit-for-bit; the standard distributions are not.
class Rng {
   public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller.
    double normal();

   private:
    std::uint64_t s_[4];
};

}  // namespace qcap

#endif

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

#include "qcap/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qcap {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double> &)> &f,
    std::vector<double> start,
    const NelderMeadOptions &options) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += options.initial_step;
    }
    int evaluations = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = f(simplex[i]);
        ++evaluations;
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto along = [&](double coef, const std::vector<double> &worst, std::vector<double> &out) {
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = centroid[k] + coef * (worst[k] - centroid[k]);
        }
    };

    bool converged = false;
    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Stable sort keeps vertex order deterministic on ties.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return values[a] < values[b];
        });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - (n > 0 ? 1 : 0)];

        double diameter = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            double d = 0;
            for (std::size_t k = 0; k < n; ++k) {
                d = std::max(d, std::abs(simplex[i][k] - simplex[best][k]));
            }
            diameter = std::max(diameter, d);
        }
        if (diameter < options.step_tol || values[worst] - values[best] < options.value_tol) {
            converged = true;
            break;
        }
        if (evaluations >= options.max_evaluations) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                centroid[k] += simplex[i][k];
            }
        }
        for (auto &c : centroid) {
            c /= static_cast<double>(n);
        }

        along(-1.0, simplex[worst], trial);
        double f_reflect = f(trial);
        ++evaluations;
        if (f_reflect < values[best]) {
            along(-2.0, simplex[worst], trial2);
            double f_expand = f(trial2);
            ++evaluations;
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }
        // Contraction, outside if the reflection improved on the worst vertex.
        const bool outside = f_reflect < values[worst];
        along(outside ? -0.5 : 0.5, simplex[worst], trial2);
        double f_contract = f(trial2);
        ++evaluations;
        if (f_contract < (outside ? f_reflect : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
            }
            values[i] = f(simplex[i]);
            ++evaluations;
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (values[i] < values[best]) {
            best = i;
        }
    }
    return {simplex[best], values[best], evaluations, converged};
}

namespace {

std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    for (auto &s : s_) {
        s = splitmix64(seed);
    }
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qcap

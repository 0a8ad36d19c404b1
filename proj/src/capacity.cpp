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

#include "qcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "qcap/errors.hpp"
#include "qcap/optimize.hpp"

namespace qcap {

namespace {

// Products within a few ulps of 1 are rounding noise around an exact 1.
double snap_norm_product(double v) {
    constexpr double slack = 8 * std::numeric_limits<double>::epsilon();
    return std::abs(v - 1) <= slack ? 1.0 : v;
}

}  // namespace

CapacityBounds CapacityBounds::from(double unital_capacity, double norm_product, double inverse_norm_product) {
    norm_product = snap_norm_product(norm_product);
    inverse_norm_product = snap_norm_product(inverse_norm_product);
    CapacityBounds b;
    b.unital_capacity = unital_capacity;
    b.norm_product = norm_product;
    b.inverse_norm_product = inverse_norm_product;
    b.lower_gap = 2 * std::log2(norm_product);
    b.upper_gap = 2 * std::log2(inverse_norm_product);
    b.lower_raw = unital_capacity - b.lower_gap;
    b.upper_raw = unital_capacity + b.upper_gap;
    b.lower_clamped = std::clamp(b.lower_raw, 0.0, 1.0);
    b.upper_clamped = std::clamp(b.upper_raw, 0.0, 1.0);
    return b;
}

void Ensemble::validate() const {
    if (members.empty() || members.size() > 4) {
        throw std::invalid_argument("ensemble must hold 1 to 4 states");
    }
    double total = 0;
    for (const auto &m : members) {
        if (m.weight < 0) {
            throw std::invalid_argument("ensemble weight is negative");
        }
        if (!m.state.is_pure(1e-9)) {
            throw std::invalid_argument("ensemble state is not pure");
        }
        total += m.weight;
    }
    if (std::abs(total - 1) > 1e-12) {
        throw std::invalid_argument("ensemble weights do not sum to 1");
    }
}

double unital_capacity(const UnitalForm &u) {
    return 1 - binary_entropy((1 - u.max_singular_value()) / 2);
}

double theorem_bound(double c_psi, const ScalingPair &s) {
    return c_psi - 2 * std::log2(s.norm_product());
}

CapacityBounds proposition_bounds(const PauliChannelParams &p) {
    const UnitalForm form = family_unital_params(p);
    const ScalingPair pair = family_scaling_pair(p);
    return CapacityBounds::from(unital_capacity(form), pair.norm_product(), pair.inverse_norm_product());
}

CapacityBounds channel_bounds(const QubitChannel &c, const SinkhornOptions &options) {
    const ScalingPair pair = sinkhorn_iterate(c, options);
    const UnitalForm form = unital_diagonalize(unitalized(c, pair), 1e-9);
    return CapacityBounds::from(unital_capacity(form), pair.norm_product(), pair.inverse_norm_product());
}

PauliChannelParams gad_params(double p, double gt) {
    if (!(p > 0)) {
        throw NotInterior("GAD with p <= 0 is amplitude damping, a boundary channel");
    }
    if (p > 0.5) {
        throw std::domain_error("GAD population p must lie in (0, 1/2]");
    }
    if (!(gt >= 0)) {
        throw std::domain_error("GAD time gt must be nonnegative");
    }
    const double e1 = std::exp(-gt);
    const double e2 = std::exp(-2 * gt);
    return {e1, e1, e2, (2 * p - 1) * (1 - e2)};
}

double gad_f(double p, double gt) {
    const double e2 = std::exp(-2 * gt);
    return std::sqrt(p * (1 - p)) * (1 - e2) + std::sqrt(1 - p + p * e2) * std::sqrt(p + (1 - p) * e2);
}

CapacityBounds gad_bounds(double p, double gt) {
    gad_params(p, gt);  // domain checks
    const double f = gad_f(p, gt);
    const double lambda_tilde = std::exp(-gt) / f;
    const double c_unital = 1 - binary_entropy((1 - lambda_tilde) / 2);
    const double ratio = std::pow((1 - p) / p, 0.25);
    return CapacityBounds::from(c_unital, ratio / std::sqrt(f), ratio * std::sqrt(f));
}

PauliChannelParams mix_params(double p) {
    if (!(p > 0 && p < 1)) {
        throw NotInterior("mixture channel is a boundary channel unless 0 < p < 1");
    }
    const double l12 = p * std::sqrt(1 - p) + (1 - p) * (1 - 4 * p / 3);
    return {l12, l12, (1 - p) * (1 - p / 3), p * p};
}

namespace {

/// Entropy of Bloch radius r without domain checks; for hot loops.
inline double fast_bloch_entropy(double r) {
    if (r >= 1) {
        return 0;
    }
    const double a = (1 + r) / 2;
    const double b = (1 - r) / 2;
    return -(a * std::log2(a) + (b > 0 ? b * std::log2(b) : 0.0));
}

/// -chi for a point of the search space: m polar pairs (theta, phi) followed by
/// m - 1 weight logits (the last logit is pinned at 0).
class NegativeHolevo {
   public:
    NegativeHolevo(const QubitChannel &c, int m) : m_(m), block_(c.block()), shift_(c.translation()) {
    }

    int dimension() const {
        return 3 * m_ - 1;
    }

    Ensemble decode(const std::vector<double> &x) const {
        Ensemble e;
        double wsum = 0;
        std::array<double, 4> w{};
        double wmax = 0;
        for (int k = 0; k + 1 < m_; ++k) {
            wmax = std::max(wmax, x[2 * m_ + k]);
        }
        for (int k = 0; k < m_; ++k) {
            w[k] = std::exp((k + 1 < m_ ? x[2 * m_ + k] : 0.0) - wmax);
            wsum += w[k];
        }
        for (int k = 0; k < m_; ++k) {
            const double st = std::sin(x[2 * k]);
            e.members.push_back(
                {w[k] / wsum, {st * std::cos(x[2 * k + 1]), st * std::sin(x[2 * k + 1]), std::cos(x[2 * k])}});
        }
        return e;
    }

    double operator()(const std::vector<double> &x) const {
        std::array<double, 4> w{};
        double wmax = 0;
        for (int k = 0; k + 1 < m_; ++k) {
            wmax = std::max(wmax, x[2 * m_ + k]);
        }
        double wsum = 0;
        for (int k = 0; k < m_; ++k) {
            w[k] = std::exp((k + 1 < m_ ? x[2 * m_ + k] : 0.0) - wmax);
            wsum += w[k];
        }
        Eigen::Vector3d avg = Eigen::Vector3d::Zero();
        double mean_entropy = 0;
        for (int k = 0; k < m_; ++k) {
            const double st = std::sin(x[2 * k]);
            const Eigen::Vector3d b(st * std::cos(x[2 * k + 1]), st * std::sin(x[2 * k + 1]), std::cos(x[2 * k]));
            const Eigen::Vector3d out = block_ * b + shift_;
            const double wk = w[k] / wsum;
            avg += wk * out;
            mean_entropy += wk * fast_bloch_entropy(out.norm());
        }
        return mean_entropy - fast_bloch_entropy(avg.norm());
    }

   private:
    int m_;
    Eigen::Matrix3d block_;
    Eigen::Vector3d shift_;
};

struct StartResult {
    double value = 0;
    std::vector<double> x;
    long evaluations = 0;
};

}  // namespace

double holevo_quantity(const QubitChannel &c, const Ensemble &e) {
    e.validate();
    Eigen::Vector3d avg = Eigen::Vector3d::Zero();
    double mean_entropy = 0;
    for (const auto &m : e.members) {
        const Eigen::Vector3d out = c.apply(m.state).vec();
        avg += m.weight * out;
        mean_entropy += m.weight * bloch_entropy(out.norm());
    }
    return std::max(0.0, bloch_entropy(avg.norm()) - mean_entropy);
}

ChiResult chi_capacity_numeric(const QubitChannel &c, const ChiConfig &config) {
    if (config.min_states < 1 || config.max_states > 4 || config.min_states > config.max_states) {
        throw std::invalid_argument("chi_capacity_numeric: ensemble sizes must satisfy 1 <= min <= max <= 4");
    }
    // All starts are drawn upfront so the result is independent of threading.
    Rng rng(config.seed);
    struct Job {
        int m;
        std::vector<double> start;
    };
    std::vector<Job> jobs;
    for (int m = config.min_states; m <= config.max_states; ++m) {
        for (int s = 0; s < config.starts_per_size; ++s) {
            std::vector<double> x(3 * m - 1);
            for (int k = 0; k < m; ++k) {
                x[2 * k] = std::acos(rng.uniform(-1, 1));
                x[2 * k + 1] = rng.uniform(0, 2 * std::numbers::pi);
            }
            for (int k = 0; k + 1 < m; ++k) {
                x[2 * m + k] = 0.5 * rng.normal();
            }
            jobs.push_back({m, std::move(x)});
        }
    }

    std::vector<StartResult> results(jobs.size());
    NelderMeadOptions screen;
    screen.initial_step = 0.5;
    screen.step_tol = config.screen_step_tol;
    screen.value_tol = 1e-12;
    screen.max_evaluations = config.max_evaluations;
    auto run_range = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < jobs.size(); i += stride) {
            const NegativeHolevo objective(c, jobs[i].m);
            auto r = nelder_mead(std::cref(objective), jobs[i].start, screen);
            results[i] = {r.value, std::move(r.x), r.evaluations};
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(jobs.size())));
    if (threads == 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(run_range, t, threads);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    ChiResult best;
    best.value = -1;
    NelderMeadOptions polish;
    polish.initial_step = 0.05;
    polish.step_tol = config.step_tol;
    polish.value_tol = 1e-15;
    polish.max_evaluations = config.max_evaluations;
    for (const auto &r : results) {
        best.evaluations += r.evaluations;
    }
    for (int m = config.min_states; m <= config.max_states; ++m) {
        std::size_t arg = jobs.size();
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].m == m && (arg == jobs.size() || results[i].value < results[arg].value)) {
                arg = i;
            }
        }
        if (arg == jobs.size()) {
            continue;
        }
        const NegativeHolevo objective(c, m);
        auto r = nelder_mead(std::cref(objective), results[arg].x, polish);
        // One restart around the polished point guards against a collapsed simplex.
        auto again = nelder_mead(std::cref(objective), r.x, polish);
        best.evaluations += r.evaluations + again.evaluations;
        const auto &final_run = again.value <= r.value ? again : r;
        const double value = std::max({-final_run.value, -results[arg].value, 0.0});
        const auto &x = -final_run.value >= -results[arg].value ? final_run.x : results[arg].x;
        if (value > best.value) {
            best.value = value;
            best.ensemble = objective.decode(x);
            best.converged = again.converged;
        }
    }
    return best;
}

double chi_capacity_grid_oracle(const QubitChannel &c, std::size_t n_grid) {
    // Antipodally closed grid: half Fibonacci points plus their negatives.
    std::vector<Eigen::Vector3d> grid = fibonacci_sphere(n_grid / 2);
    for (std::size_t i = 0, half = grid.size(); i < half; ++i) {
        grid.push_back(-grid[i]);
    }
    std::vector<Eigen::Vector3d> out;
    std::vector<double> entropy;
    out.reserve(grid.size());
    entropy.reserve(grid.size());
    for (const auto &b : grid) {
        out.push_back(c.block() * b + c.translation());
        entropy.push_back(fast_bloch_entropy(out.back().norm()));
    }
    constexpr int kWeights = 101;
    double best = 0;
    // (i, j, w) and (j, i, 1 - w) are the same ensemble.
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const Eigen::Vector3d d = out[i] - out[j];
            const double c0 = out[j].squaredNorm();
            const double c1 = 2 * out[j].dot(d);
            const double c2 = d.squaredNorm();
            for (int k = 1; k < kWeights - 1; ++k) {
                const double w = static_cast<double>(k) / (kWeights - 1);
                const double r = std::sqrt(std::max(0.0, c0 + w * (c1 + w * c2)));
                const double chi = fast_bloch_entropy(r) - w * entropy[i] - (1 - w) * entropy[j];
                best = std::max(best, chi);
            }
        }
    }
    return best;
}

}  // namespace qcap

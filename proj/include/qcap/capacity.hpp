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

#ifndef QCAP_CAPACITY_HPP
#define QCAP_CAPACITY_HPP

#include <cstdint>
#include <vector>

#include "qcap/core.hpp"
#include "qcap/sinkhorn.hpp"

namespace qcap {

/// Capacities in bits. Raw bounds follow the closed formulas and may leave
/// [0, 1]; the clamped ones are the informative values.
struct CapacityBounds {
    double unital_capacity = 0;
    /// 2 log2(|A| |B|).
    double lower_gap = 0;
    /// 2 log2(|A^-1| |B^-1|).
    double upper_gap = 0;
    double lower_raw = 0;
    double upper_raw = 0;
    double lower_clamped = 0;
    double upper_clamped = 0;
    double norm_product = 1;
    double inverse_norm_product = 1;

    static CapacityBounds from(double unital_capacity, double norm_product, double inverse_norm_product);
};

struct EnsembleMember {
    double weight = 0;
    BlochVector state;
};

/// Mixture of 1 to 4 pure qubit states.
struct Ensemble {
    std::vector<EnsembleMember> members;

    /// Throws std::invalid_argument unless weights are nonnegative, sum to 1
    /// within 1e-12, and every state is pure within 1e-9.
    void validate() const;
};

/// 1 - h((1 - s_max) / 2).
double unital_capacity(const UnitalForm &u);

/// c_psi - 2 log2(|A| |B|).
double theorem_bound(double c_psi, const ScalingPair &s);

/// Bounds for the four-parameter family from the closed-form decomposition.
/// Throws NotInterior.
CapacityBounds proposition_bounds(const PauliChannelParams &p);

/// Same bounds for an arbitrary interior channel, through the iterative
/// scaling and the singular values of the unital block.
CapacityBounds channel_bounds(const QubitChannel &c, const SinkhornOptions &options = {});

/// Generalized amplitude damping with excited-state population p in (0, 1/2]
/// after dimensionless time gt >= 0. Throws NotInterior for p <= 0 and
/// std::domain_error for p > 1/2 or gt < 0.
PauliChannelParams gad_params(double p, double gt);

/// sqrt(p(1-p))(1 - e^{-2gt}) + sqrt(1 - p + p e^{-2gt}) sqrt(p + (1-p) e^{-2gt}).
double gad_f(double p, double gt);

/// Closed-form GAD bounds; valid at gt = 0 too.
CapacityBounds gad_bounds(double p, double gt);

/// p A_p + (1 - p) D_p, amplitude damping mixed with depolarizing at the same
/// parameter. Throws NotInterior unless 0 < p < 1.
PauliChannelParams mix_params(double p);

/// S(sum p_k Phi[rho_k]) - sum p_k S(Phi[rho_k]).
double holevo_quantity(const QubitChannel &c, const Ensemble &e);

struct ChiConfig {
    std::uint64_t seed = 42;
    int starts_per_size = 32;
    int min_states = 2;
    int max_states = 4;
    /// Screening tolerance for every start; the best start per ensemble size
    /// is then polished to `step_tol`.
    double screen_step_tol = 1e-6;
    double step_tol = 1e-9;
    int max_evaluations = 20000;
    /// Worker threads for the starts; the result does not depend on it.
    unsigned threads = 1;
};

struct ChiResult {
    double value = 0;
    Ensemble ensemble;
    bool converged = true;
    long evaluations = 0;
};

/// Multistart Nelder-Mead over ensembles of 2 to 4 pure states.
ChiResult chi_capacity_numeric(const QubitChannel &c, const ChiConfig &config = {});

/// Exhaustive search over two-state ensembles on an n_grid-point sphere grid
/// (n_grid / 2 Fibonacci points and their antipodes) with 101 weights. A
/// lower bound on the chi-capacity.
double chi_capacity_grid_oracle(const QubitChannel &c, std::size_t n_grid = 2000);

}  // namespace qcap

#endif

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

#ifndef QCAP_SINKHORN_HPP
#define QCAP_SINKHORN_HPP

#include <array>

#include "qcap/core.hpp"

namespace qcap {

/// Positive definite (A, B) such that Phi_A o Phi o Phi_B is unital and trace
/// preserving. Only the products of norms are gauge invariant under
/// (A, B) -> (A / c, c B).
struct ScalingPair {
    Matrix2c a = Matrix2c::Identity();
    Matrix2c b = Matrix2c::Identity();
    double norm_a = 1;
    double norm_b = 1;
    double norm_a_inv = 1;
    double norm_b_inv = 1;
    /// Fixed-point iterations used (0 for closed-form pairs).
    int iterations = 0;

    static ScalingPair from(const Matrix2c &a, const Matrix2c &b);

    double norm_product() const {
        return norm_a * norm_b;
    }
    double inverse_norm_product() const {
        return norm_a_inv * norm_b_inv;
    }
    /// (A / c, c B).
    ScalingPair rescaled(double c) const;
};

/// Diagonal form of a unital channel: Upsilon = Phi_W o Lambda o Phi_V with
/// Lambda = diag(1, lambda). `lambda` carries the orientation sign on its last
/// entry; `singular_values` are sorted descending.
struct UnitalForm {
    std::array<double, 3> lambda{};
    std::array<double, 3> singular_values{};

    double max_singular_value() const {
        return singular_values[0];
    }
    /// 1 +- lambda3 >= |lambda1 +- lambda2| within tol.
    bool is_completely_positive(double tol = 1e-9) const;
};

struct DecompositionResidual {
    /// |Upsilon[I] - I| in Pauli coordinates.
    double unitality = 0;
    double trace_preservation = 0;
    /// max |T_Phi - T_{A^-1} T_Upsilon' T_{B^-1}| with Upsilon' the unital channel closest to Upsilon.
    double reconstruction = 0;

    double max() const;
};

struct SinkhornOptions {
    double tol = 1e-12;
    int max_iter = 10000;
};

/// Closed-form pair for the four-parameter family. Throws NotInterior unless |t3| + |lambda3| < 1.
ScalingPair family_scaling_pair(const PauliChannelParams &p);

/// Closed-form diagonal parameters of Upsilon for the four-parameter family.
UnitalForm family_unital_params(const PauliChannelParams &p);

/// Alternating scaling Q <- Phi[P]^-1, P <- Phi^dagger[Q]^-1 from P = I, returning
/// A = sqrt(Q), B = sqrt(P) gauge-fixed to det A = det B.
/// Throws NotInterior before iterating, NoConvergence after max_iter.
ScalingPair sinkhorn_iterate(const QubitChannel &c, const SinkhornOptions &options = {});

/// Phi_A o Phi o Phi_B.
QubitMap unitalized(const QubitChannel &c, const ScalingPair &s);

DecompositionResidual verify_decomposition(const QubitChannel &c, const ScalingPair &s);

/// Throws NotUnital / NotTracePreserving when the residuals exceed tol.
UnitalForm unital_diagonalize(const QubitMap &u, double tol = 1e-9);

/// Adjugate over determinant.
Matrix2c inverse_2x2(const Matrix2c &m);
/// Principal square root of a positive definite 2x2 matrix.
Matrix2c sqrt_positive_2x2(const Matrix2c &m);

}  // namespace qcap

#endif

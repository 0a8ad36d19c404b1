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

#ifndef QCAP_CORE_HPP
#define QCAP_CORE_HPP

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qcap {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Eigenvalues at or above -kPsdTolerance count as nonnegative.
inline constexpr double kPsdTolerance = 1e-10;

/// Number of Fibonacci-sphere pure states probed by the general interiority test.
inline constexpr std::size_t kInteriorGridSize = 10000;

/// Output Bloch norms below 1 - kInteriorMargin are strictly inside the ball.
inline constexpr double kInteriorMargin = 1e-9;

/// I, sigma_x, sigma_y, sigma_z.
const std::array<Matrix2c, 4> &pauli_basis();

struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    static BlochVector from(const Eigen::Vector3d &v) {
        return {v.x(), v.y(), v.z()};
    }
    Eigen::Vector3d vec() const {
        return {x, y, z};
    }
    double norm() const;
    bool is_physical(double tol = 1e-12) const;
    bool is_pure(double tol = 1e-12) const;
};

struct QubitDensity {
    Matrix2c matrix = Matrix2c::Identity() / 2.0;

    /// Hermitian, unit trace, and eigenvalues >= -tol.
    bool is_valid(double tol = 1e-12) const;
};

QubitDensity bloch_to_density(const BlochVector &b);
BlochVector density_to_bloch(const QubitDensity &rho);

/// Phi[X] = (tr[X](I + t3 sz) + sum_j lambda_j tr[s_j X] s_j) / 2.
struct PauliChannelParams {
    double lambda1 = 1;
    double lambda2 = 1;
    double lambda3 = 1;
    double t3 = 0;
};

/// Hermiticity-preserving linear map on 2x2 operators, stored as its Pauli
/// transfer matrix T[mu][nu] = tr(s_mu Phi[s_nu]) / 2. Not necessarily trace
/// preserving; scaling maps and their compositions live here.
class QubitMap {
   public:
    QubitMap() : ptm_(Eigen::Matrix4d::Identity()) {
    }
    explicit QubitMap(const Eigen::Matrix4d &ptm) : ptm_(ptm) {
    }

    /// X -> K X K^dagger.
    static QubitMap conjugation(const Matrix2c &k);

    const Eigen::Matrix4d &ptm() const {
        return ptm_;
    }
    Matrix2c apply(const Matrix2c &x) const;
    /// Hilbert-Schmidt adjoint; its PTM is the transpose.
    QubitMap adjoint() const {
        return QubitMap(ptm_.transpose());
    }

   private:
    Eigen::Matrix4d ptm_;
};

/// Trace-preserving qubit map. The first PTM row is forced to (1, 0, 0, 0) on
/// construction; the remaining rows are the affine Bloch map b -> M b + t.
class QubitChannel {
   public:
    QubitChannel() = default;
    explicit QubitChannel(const Eigen::Matrix4d &ptm);
    QubitChannel(const Eigen::Vector3d &translation, const Eigen::Matrix3d &block);

    /// Throws NotTracePreserving if the first PTM row is off by more than tol.
    static QubitChannel from_map(const QubitMap &map, double tol = 1e-9);

    const QubitMap &map() const {
        return map_;
    }
    const Eigen::Matrix4d &ptm() const {
        return map_.ptm();
    }
    Eigen::Vector3d translation() const {
        return map_.ptm().block<3, 1>(1, 0);
    }
    Eigen::Matrix3d block() const {
        return map_.ptm().block<3, 3>(1, 1);
    }

    BlochVector apply(const BlochVector &b) const;
    Matrix2c apply(const Matrix2c &x) const {
        return map_.apply(x);
    }

   private:
    QubitMap map_;
};

/// Single-Kraus map X -> K X K^dagger.
struct ScalingOp {
    Matrix2c k = Matrix2c::Identity();

    QubitMap as_map() const {
        return QubitMap::conjugation(k);
    }
};

struct ChoiMatrix {
    /// sum_ij |i><j| (x) Phi[|i><j|]; trace 2 for trace-preserving maps.
    Matrix4c matrix;
};

struct CpReport {
    bool completely_positive = false;
    double min_eigenvalue = 0;
};

QubitChannel ptm_from_params(const PauliChannelParams &p);

BlochVector apply_channel(const PauliChannelParams &p, const BlochVector &b);
BlochVector apply_channel(const QubitChannel &c, const BlochVector &b);

ChoiMatrix choi_from_channel(const QubitMap &c);
inline ChoiMatrix choi_from_channel(const QubitChannel &c) {
    return choi_from_channel(c.map());
}

/// Kraus operators sqrt(mu) v reshaped from the Choi eigenpairs with mu > tol.
/// Throws NotCompletelyPositive for eigenvalues below -kPsdTolerance.
std::vector<Matrix2c> kraus_from_choi(const ChoiMatrix &choi, double tol = 1e-14);

CpReport is_completely_positive(const QubitMap &c, double tol = kPsdTolerance);
inline CpReport is_completely_positive(const QubitChannel &c, double tol = kPsdTolerance) {
    return is_completely_positive(c.map(), tol);
}
inline CpReport is_completely_positive(const PauliChannelParams &p, double tol = kPsdTolerance) {
    return is_completely_positive(ptm_from_params(p), tol);
}

/// max_mu |T[mu][0] - delta_mu0|, i.e. the distance of Phi[I]/2 from I/2 in Pauli coordinates.
double unitality_residual(const QubitMap &c);
/// max_nu |T[0][nu] - delta_0nu|.
double trace_preservation_residual(const QubitMap &c);

bool is_unital(const QubitMap &c, double tol = 1e-12);
inline bool is_unital(const QubitChannel &c, double tol = 1e-12) {
    return is_unital(c.map(), tol);
}
bool is_trace_preserving(const QubitMap &c, double tol = 1e-12);

/// |t3| + |lambda3| < 1.
bool is_interior(const PauliChannelParams &p);
/// Maximal output Bloch norm over pure inputs is below 1 - kInteriorMargin.
bool is_interior(const QubitChannel &c);

/// Max of |M b + t| over the unit sphere: Fibonacci grid followed by a local
/// simplex refinement from the best grid point.
double max_output_bloch_norm(const QubitChannel &c, std::size_t grid_points = kInteriorGridSize);

/// Deterministic, nearly uniform points on the unit sphere.
std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n);

/// Binary entropy in bits. Throws std::domain_error outside [0, 1] beyond 1e-12.
double binary_entropy(double x);
/// Entropy in bits of a qubit state with Bloch radius r.
double bloch_entropy(double r);
double von_neumann_entropy(const QubitDensity &rho);

Matrix2c apply_scaling(const ScalingOp &k, const Matrix2c &x);
/// outer o inner.
QubitMap compose(const QubitMap &outer, const QubitMap &inner);
QubitChannel compose(const QubitChannel &outer, const QubitChannel &inner);
/// Largest singular value, closed form for 2x2.
double operator_norm(const Matrix2c &k);

}  // namespace qcap

#endif

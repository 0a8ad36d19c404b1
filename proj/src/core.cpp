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

#include "qcap/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcap/errors.hpp"
#include "qcap/optimize.hpp"

namespace qcap {

using namespace std::complex_literals;

const std::array<Matrix2c, 4> &pauli_basis() {
    static const std::array<Matrix2c, 4> basis = [] {
        std::array<Matrix2c, 4> s;
        s[0] << 1, 0, 0, 1;
        s[1] << 0, 1, 1, 0;
        s[2] << 0, -1i, 1i, 0;
        s[3] << 1, 0, 0, -1;
        return s;
    }();
    return basis;
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

bool BlochVector::is_physical(double tol) const {
    return norm() <= 1 + tol;
}

bool BlochVector::is_pure(double tol) const {
    return std::abs(norm() - 1) <= tol;
}

bool QubitDensity::is_valid(double tol) const {
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(matrix.trace() - 1.0) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix2c> solver(matrix, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
}

QubitDensity bloch_to_density(const BlochVector &b) {
    QubitDensity rho;
    rho.matrix << (1 + b.z) / 2, std::complex<double>(b.x, -b.y) / 2.0, std::complex<double>(b.x, b.y) / 2.0,
        (1 - b.z) / 2;
    return rho;
}

BlochVector density_to_bloch(const QubitDensity &rho) {
    const auto &m = rho.matrix;
    return {2 * m(1, 0).real(), 2 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

QubitMap QubitMap::conjugation(const Matrix2c &k) {
    const auto &s = pauli_basis();
    const Matrix2c kd = k.adjoint();
    Eigen::Matrix4d t;
    for (int nu = 0; nu < 4; ++nu) {
        const Matrix2c image = k * s[nu] * kd;
        for (int mu = 0; mu < 4; ++mu) {
            t(mu, nu) = 0.5 * (s[mu] * image).trace().real();
        }
    }
    return QubitMap(t);
}

Matrix2c QubitMap::apply(const Matrix2c &x) const {
    const auto &s = pauli_basis();
    Eigen::Vector4cd coeffs;
    for (int nu = 0; nu < 4; ++nu) {
        coeffs(nu) = (s[nu] * x).trace();
    }
    const Eigen::Vector4cd out = ptm_.cast<std::complex<double>>() * coeffs;
    Matrix2c y = Matrix2c::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        y += out(mu) * s[mu];
    }
    return y / 2.0;
}

QubitChannel::QubitChannel(const Eigen::Matrix4d &ptm) {
    Eigen::Matrix4d t = ptm;
    t.row(0) << 1, 0, 0, 0;
    map_ = QubitMap(t);
}

QubitChannel::QubitChannel(const Eigen::Vector3d &translation, const Eigen::Matrix3d &block) {
    Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
    t(0, 0) = 1;
    t.block<3, 1>(1, 0) = translation;
    t.block<3, 3>(1, 1) = block;
    map_ = QubitMap(t);
}

QubitChannel QubitChannel::from_map(const QubitMap &map, double tol) {
    const double residual = trace_preservation_residual(map);
    if (residual > tol) {
        throw NotTracePreserving("map is not trace preserving (residual " + std::to_string(residual) + ")");
    }
    return QubitChannel(map.ptm());
}

BlochVector QubitChannel::apply(const BlochVector &b) const {
    return BlochVector::from(block() * b.vec() + translation());
}

QubitChannel ptm_from_params(const PauliChannelParams &p) {
    Eigen::Matrix3d block = Eigen::Vector3d(p.lambda1, p.lambda2, p.lambda3).asDiagonal();
    return QubitChannel(Eigen::Vector3d(0, 0, p.t3), block);
}

BlochVector apply_channel(const PauliChannelParams &p, const BlochVector &b) {
    return {p.lambda1 * b.x, p.lambda2 * b.y, p.lambda3 * b.z + p.t3};
}

BlochVector apply_channel(const QubitChannel &c, const BlochVector &b) {
    return c.apply(b);
}

ChoiMatrix choi_from_channel(const QubitMap &c) {
    ChoiMatrix choi;
    choi.matrix.setZero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Matrix2c unit = Matrix2c::Zero();
            unit(i, j) = 1;
            choi.matrix.block<2, 2>(2 * i, 2 * j) = c.apply(unit);
        }
    }
    return choi;
}

std::vector<Matrix2c> kraus_from_choi(const ChoiMatrix &choi, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(choi.matrix);
    if (solver.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw NotCompletelyPositive("Choi matrix has a negative eigenvalue");
    }
    std::vector<Matrix2c> kraus;
    for (int k = 0; k < 4; ++k) {
        const double mu = solver.eigenvalues()(k);
        if (mu <= tol) {
            continue;
        }
        const Eigen::Vector4cd v = solver.eigenvectors().col(k) * std::sqrt(mu);
        Matrix2c op;
        // Choi entry (2i + a, 2j + b) is Phi[|i><j|](a, b), so K(a, i) = v(2i + a).
        op << v(0), v(2), v(1), v(3);
        kraus.push_back(op);
    }
    return kraus;
}

CpReport is_completely_positive(const QubitMap &c, double tol) {
    const ChoiMatrix choi = choi_from_channel(c);
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(choi.matrix, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    return {min_eig >= -tol, min_eig};
}

double unitality_residual(const QubitMap &c) {
    const auto &t = c.ptm();
    return std::max({std::abs(t(0, 0) - 1), std::abs(t(1, 0)), std::abs(t(2, 0)), std::abs(t(3, 0))});
}

double trace_preservation_residual(const QubitMap &c) {
    const auto &t = c.ptm();
    return std::max({std::abs(t(0, 0) - 1), std::abs(t(0, 1)), std::abs(t(0, 2)), std::abs(t(0, 3))});
}

bool is_unital(const QubitMap &c, double tol) {
    return unitality_residual(c) <= tol;
}

bool is_trace_preserving(const QubitMap &c, double tol) {
    return trace_preservation_residual(c) <= tol;
}

bool is_interior(const PauliChannelParams &p) {
    return std::abs(p.t3) + std::abs(p.lambda3) < 1;
}

bool is_interior(const QubitChannel &c) {
    return max_output_bloch_norm(c) < 1 - kInteriorMargin;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n) {
    std::vector<Eigen::Vector3d> points;
    points.reserve(n);
    const double golden_angle = std::numbers::pi * (3 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 1 - (2.0 * static_cast<double>(i) + 1) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        const double phi = golden_angle * static_cast<double>(i);
        points.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    return points;
}

double max_output_bloch_norm(const QubitChannel &c, std::size_t grid_points) {
    const Eigen::Matrix3d m = c.block();
    const Eigen::Vector3d t = c.translation();
    Eigen::Vector3d best_point(0, 0, 1);
    double best = -1;
    for (const auto &b : fibonacci_sphere(grid_points)) {
        const double r = (m * b + t).norm();
        if (r > best) {
            best = r;
            best_point = b;
        }
    }
    auto output_norm = [&](const std::vector<double> &angles) {
        const double st = std::sin(angles[0]);
        const Eigen::Vector3d b(st * std::cos(angles[1]), st * std::sin(angles[1]), std::cos(angles[0]));
        return -(m * b + t).norm();
    };
    NelderMeadOptions options;
    options.initial_step = std::sqrt(4 * std::numbers::pi / static_cast<double>(std::max<std::size_t>(grid_points, 1)));
    options.step_tol = 1e-12;
    options.max_evaluations = 2000;
    const double theta = std::acos(std::clamp(best_point.z(), -1.0, 1.0));
    const double phi = std::atan2(best_point.y(), best_point.x());
    const auto refined = nelder_mead(output_norm, {theta, phi}, options);
    return std::max(best, -refined.value);
}

double binary_entropy(double x) {
    constexpr double slack = 1e-12;
    if (!(x >= -slack && x <= 1 + slack)) {
        throw std::domain_error("binary_entropy: argument " + std::to_string(x) + " outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    double h = 0;
    if (x > 0) {
        h -= x * std::log2(x);
    }
    if (x < 1) {
        h -= (1 - x) * std::log2(1 - x);
    }
    return h;
}

double bloch_entropy(double r) {
    return binary_entropy((1 - std::clamp(r, 0.0, 1.0)) / 2);
}

double von_neumann_entropy(const QubitDensity &rho) {
    return bloch_entropy(density_to_bloch(rho).norm());
}

Matrix2c apply_scaling(const ScalingOp &k, const Matrix2c &x) {
    return k.k * x * k.k.adjoint();
}

QubitMap compose(const QubitMap &outer, const QubitMap &inner) {
    return QubitMap(outer.ptm() * inner.ptm());
}

QubitChannel compose(const QubitChannel &outer, const QubitChannel &inner) {
    return QubitChannel(outer.ptm() * inner.ptm());
}

double operator_norm(const Matrix2c &k) {
    const Matrix2c g = k.adjoint() * k;
    const double a = g(0, 0).real();
    const double d = g(1, 1).real();
    const double disc = std::hypot(a - d, 2 * std::abs(g(0, 1)));
    return std::sqrt(std::max(0.0, (a + d + disc) / 2));
}

}  // namespace qcap

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

#include "qcap/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qcap/errors.hpp"

namespace qcap {

namespace {

std::string describe(const PauliChannelParams &p) {
    std::ostringstream out;
    out << "(lambda = " << p.lambda1 << ", " << p.lambda2 << ", " << p.lambda3 << "; t3 = " << p.t3 << ")";
    return out.str();
}

void require_interior(const PauliChannelParams &p) {
    if (!is_interior(p)) {
        throw NotInterior("|t3| + |lambda3| >= 1 for " + describe(p));
    }
}

std::array<double, 3> sorted_abs(std::array<double, 3> v) {
    for (auto &x : v) {
        x = std::abs(x);
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

}  // namespace

ScalingPair ScalingPair::from(const Matrix2c &a, const Matrix2c &b) {
    ScalingPair s;
    s.a = a;
    s.b = b;
    s.norm_a = operator_norm(a);
    s.norm_b = operator_norm(b);
    s.norm_a_inv = operator_norm(inverse_2x2(a));
    s.norm_b_inv = operator_norm(inverse_2x2(b));
    return s;
}

ScalingPair ScalingPair::rescaled(double c) const {
    ScalingPair s = from(a / c, b * c);
    s.iterations = iterations;
    return s;
}

bool UnitalForm::is_completely_positive(double tol) const {
    const auto [l1, l2, l3] = lambda;
    return 1 + l3 >= std::abs(l1 + l2) - tol && 1 - l3 >= std::abs(l1 - l2) - tol;
}

double DecompositionResidual::max() const {
    return std::max({unitality, trace_preservation, reconstruction});
}

Matrix2c inverse_2x2(const Matrix2c &m) {
    const std::complex<double> det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) == 0) {
        throw std::domain_error("inverse_2x2: singular matrix");
    }
    Matrix2c adj;
    adj << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return adj / det;
}

Matrix2c sqrt_positive_2x2(const Matrix2c &m) {
    const Matrix2c h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix2c> solver(h);
    const Eigen::Vector2d ev = solver.eigenvalues();
    if (ev.minCoeff() <= 0) {
        throw std::domain_error("sqrt_positive_2x2: matrix is not positive definite");
    }
    const Eigen::Vector2d root = ev.cwiseSqrt();
    return solver.eigenvectors() * root.cast<std::complex<double>>().asDiagonal() *
           solver.eigenvectors().adjoint();
}

ScalingPair family_scaling_pair(const PauliChannelParams &p) {
    require_interior(p);
    const double t = p.t3;
    const double l = p.lambda3;
    // Products of positive factors, so no cancellation near the boundary.
    const double r1 = (1 - t - l) * (1 - t + l);
    const double r2 = (1 + t - l) * (1 + t + l);
    const double a1 = std::pow(r1, 0.25);
    const double a2 = std::pow(r2, 0.25);
    const double s1 = std::sqrt(r1);
    const double s2 = std::sqrt(r2);

    const double b1 = (1 + t - l) * s1 + (1 - t + l) * s2;
    const double b2 = (1 + t + l) * s1 + (1 - t - l) * s2;
    const double prefactor = std::sqrt(2.0) / std::sqrt(4 - (a1 - a2) * (a1 - a2)) / (a1 * a2);
    double beta1 = prefactor * std::sqrt(b1);
    double beta2 = prefactor * std::sqrt(b2);

    // The prefactor is exact only for t3 = 0; fix the overall scale by
    // tr Upsilon[|0><0|] = 1. The ratio beta1 / beta2 then makes both trace
    // conditions and unitality hold.
    const double trace0 = beta1 * beta1 * (a1 * a1 * (1 + l + t) + a2 * a2 * (1 - l - t)) / 2;
    const double c = 1 / std::sqrt(trace0);
    beta1 *= c;
    beta2 *= c;

    Matrix2c a = Matrix2c::Zero();
    Matrix2c b = Matrix2c::Zero();
    a(0, 0) = a1;
    a(1, 1) = a2;
    b(0, 0) = beta1;
    b(1, 1) = beta2;
    ScalingPair pair = ScalingPair::from(a, b);

    const DecompositionResidual residual = verify_decomposition(ptm_from_params(p), pair);
    if (residual.max() > 1e-9) {
        throw std::logic_error("family_scaling_pair: decomposition residual " + std::to_string(residual.max()) +
                               " for " + describe(p));
    }
    return pair;
}

UnitalForm family_unital_params(const PauliChannelParams &p) {
    require_interior(p);
    const double t = p.t3;
    const double l = p.lambda3;
    const double d = std::sqrt((1 + l - t) * (1 + l + t)) + std::sqrt((1 - l - t) * (1 - l + t));
    UnitalForm form;
    form.lambda = {2 * p.lambda1 / d, 2 * p.lambda2 / d, 4 * l / (d * d)};
    form.singular_values = sorted_abs(form.lambda);
    return form;
}

QubitMap unitalized(const QubitChannel &c, const ScalingPair &s) {
    return QubitMap(QubitMap::conjugation(s.a).ptm() * c.ptm() * QubitMap::conjugation(s.b).ptm());
}

ScalingPair sinkhorn_iterate(const QubitChannel &c, const SinkhornOptions &options) {
    if (!is_interior(c)) {
        throw NotInterior("channel image touches the Bloch sphere; no Sinkhorn scaling exists");
    }
    const QubitMap &phi = c.map();
    const QubitMap phi_dagger = phi.adjoint();

    Matrix2c p = Matrix2c::Identity();
    Matrix2c q = Matrix2c::Identity();
    double residual = 0;
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        q = inverse_2x2(phi.apply(p));
        q = (q + q.adjoint()) / 2.0;
        p = inverse_2x2(phi_dagger.apply(q));
        p = (p + p.adjoint()) / 2.0;

        const Matrix2c a = sqrt_positive_2x2(q);
        const Matrix2c b = sqrt_positive_2x2(p);
        const QubitMap upsilon(QubitMap::conjugation(a).ptm() * c.ptm() * QubitMap::conjugation(b).ptm());
        residual = std::max(unitality_residual(upsilon), trace_preservation_residual(upsilon));
        if (residual < options.tol) {
            // Gauge: det A = det B.
            const double det_a = std::abs(a.determinant());
            const double det_b = std::abs(b.determinant());
            ScalingPair pair = ScalingPair::from(a, b).rescaled(std::pow(det_a / det_b, 0.25));
            pair.iterations = iter;
            return pair;
        }
    }
    throw NoConvergence("sinkhorn_iterate: residual " + std::to_string(residual) + " after " +
                        std::to_string(options.max_iter) + " iterations");
}

DecompositionResidual verify_decomposition(const QubitChannel &c, const ScalingPair &s) {
    const QubitMap upsilon = unitalized(c, s);
    DecompositionResidual r;
    r.unitality = unitality_residual(upsilon);
    r.trace_preservation = trace_preservation_residual(upsilon);

    Eigen::Matrix4d unital = upsilon.ptm();
    unital.row(0) << 1, 0, 0, 0;
    unital.col(0) << 1, 0, 0, 0;
    const Eigen::Matrix4d rebuilt = QubitMap::conjugation(inverse_2x2(s.a)).ptm() * unital *
                                    QubitMap::conjugation(inverse_2x2(s.b)).ptm();
    r.reconstruction = (rebuilt - c.ptm()).cwiseAbs().maxCoeff();
    return r;
}

UnitalForm unital_diagonalize(const QubitMap &u, double tol) {
    if (unitality_residual(u) > tol) {
        throw NotUnital("unital_diagonalize: map is not unital (residual " + std::to_string(unitality_residual(u)) +
                        ")");
    }
    if (trace_preservation_residual(u) > tol) {
        throw NotTracePreserving("unital_diagonalize: map is not trace preserving");
    }
    const Eigen::Matrix3d m = u.ptm().block<3, 3>(1, 1);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
    const Eigen::Vector3d sv = svd.singularValues();
    UnitalForm form;
    form.singular_values = {sv(0), sv(1), sv(2)};
    const double orientation = m.determinant() < 0 ? -1.0 : 1.0;
    form.lambda = {sv(0), sv(1), orientation * sv(2)};
    return form;
}

}  // namespace qcap

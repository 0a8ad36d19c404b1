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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qcap/errors.hpp"
#include "qcap/verify.hpp"

using namespace qcap;
using namespace std::complex_literals;

namespace {

// Independent PTM from Kraus operators: T[mu][nu] = tr(s_mu sum_k K s_nu K^dag) / 2.
Eigen::Matrix4d ptm_from_kraus(const std::vector<Matrix2c> &kraus) {
    const auto &s = pauli_basis();
    Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            for (const auto &k : kraus) {
                t(mu, nu) += 0.5 * (s[mu] * k * s[nu] * k.adjoint()).trace().real();
            }
        }
    }
    return t;
}

std::vector<Matrix2c> gad_kraus(double p, double gt) {
    const double g = 1 - std::exp(-2 * gt);
    Matrix2c k0, k1, k2, k3;
    // Excited population p sits in |0><0| for the z-translation (2p - 1)(1 - e^{-2 gt}).
    k0 << std::sqrt(1 - g), 0, 0, 1;
    k1 << 0, 0, std::sqrt(g), 0;
    k2 << 1, 0, 0, std::sqrt(1 - g);
    k3 << 0, std::sqrt(g), 0, 0;
    return {std::sqrt(1 - p) * k0, std::sqrt(1 - p) * k1, std::sqrt(p) * k2, std::sqrt(p) * k3};
}

}  // namespace

TEST(core, pauli_basis_orthonormal) {
    const auto &s = pauli_basis();
    for (int a = 0; a < 4; ++a) {
        EXPECT_LT((s[a] - s[a].adjoint()).norm(), 1e-15);
        for (int b = 0; b < 4; ++b) {
            EXPECT_NEAR(std::abs((s[a] * s[b]).trace()), a == b ? 2.0 : 0.0, 1e-15);
        }
    }
}

TEST(core, bloch_round_trip) {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const BlochVector b = random_bloch(rng);
        const QubitDensity rho = bloch_to_density(b);
        ASSERT_TRUE(rho.is_valid());
        const BlochVector back = density_to_bloch(rho);
        EXPECT_NEAR(back.x, b.x, 1e-14);
        EXPECT_NEAR(back.y, b.y, 1e-14);
        EXPECT_NEAR(back.z, b.z, 1e-14);
    }
}

TEST(core, density_validity) {
    QubitDensity rho;
    EXPECT_TRUE(rho.is_valid());
    rho.matrix << 1.2, 0, 0, -0.2;
    EXPECT_FALSE(rho.is_valid());
    rho.matrix << 0.5, 1, 0, 0.5;
    EXPECT_FALSE(rho.is_valid());
    EXPECT_TRUE(BlochVector({0, 0, 1}).is_pure());
    EXPECT_FALSE(BlochVector({0, 0.5, 0}).is_pure());
    EXPECT_FALSE(BlochVector({1, 1, 0}).is_physical());
}

TEST(core, channel_canonicalizes_first_row) {
    Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
    t(0, 2) = 0.3;
    t(0, 0) = 0.9;
    const QubitChannel c(t);
    EXPECT_EQ(c.ptm().row(0), Eigen::RowVector4d(1, 0, 0, 0));
    EXPECT_THROW(QubitChannel::from_map(QubitMap(t)), NotTracePreserving);
}

TEST(core, params_ptm_matches_gad_kraus) {
    for (double p : {0.1, 0.3, 0.475}) {
        for (double gt : {0.2, 1.0, 2.5}) {
            const double e1 = std::exp(-gt);
            const double e2 = std::exp(-2 * gt);
            const QubitChannel c = ptm_from_params({e1, e1, e2, (2 * p - 1) * (1 - e2)});
            EXPECT_LT((c.ptm() - ptm_from_kraus(gad_kraus(p, gt))).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(core, apply_channel_paths_agree) {
    const PauliChannelParams p{0.5, 0.4, 0.3, 0.2};
    const BlochVector b{0.3, -0.2, 0.6};
    const BlochVector direct = apply_channel(p, b);
    const BlochVector via_ptm = apply_channel(ptm_from_params(p), b);
    EXPECT_NEAR(direct.x, 0.15, 1e-15);
    EXPECT_NEAR(direct.y, -0.08, 1e-15);
    EXPECT_NEAR(direct.z, 0.38, 1e-15);
    EXPECT_NEAR((direct.vec() - via_ptm.vec()).norm(), 0, 1e-15);
    const Matrix2c out = ptm_from_params(p).apply(bloch_to_density(b).matrix);
    EXPECT_NEAR((density_to_bloch({out}).vec() - direct.vec()).norm(), 0, 1e-15);
}

TEST(core, ptm_matches_kraus_path_on_random_channels) {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const QubitChannel c = random_channel(rng);
        const Matrix2c rho = bloch_to_density(random_bloch(rng)).matrix;
        const auto kraus = kraus_from_choi(choi_from_channel(c));
        Matrix2c out = Matrix2c::Zero();
        for (const auto &k : kraus) {
            out += k * rho * k.adjoint();
        }
        ASSERT_LT((out - c.apply(rho)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(core, choi_of_identity) {
    const ChoiMatrix choi = choi_from_channel(QubitChannel());
    EXPECT_NEAR(choi.matrix.trace().real(), 2, 1e-15);
    Matrix4c expected = Matrix4c::Zero();
    for (int a : {0, 3}) {
        for (int b : {0, 3}) {
            expected(a, b) = 1;
        }
    }
    EXPECT_LT((choi.matrix - expected).norm(), 1e-15);
    const auto kraus = kraus_from_choi(choi);
    ASSERT_EQ(kraus.size(), 1u);
    EXPECT_NEAR(std::abs((kraus[0].adjoint() * kraus[0] - Matrix2c::Identity()).norm()), 0, 1e-14);
}

TEST(core, kraus_rejects_non_cp) {
    EXPECT_THROW(kraus_from_choi(choi_from_channel(ptm_from_params({1, 1, -1, 0}))), NotCompletelyPositive);
}

TEST(core, cp_examples) {
    EXPECT_TRUE(is_completely_positive(PauliChannelParams{0.5, 0.5, 0.5, 0}).completely_positive);
    // Transpose map.
    const CpReport transpose = is_completely_positive(PauliChannelParams{1, -1, 1, 0});
    EXPECT_FALSE(transpose.completely_positive);
    EXPECT_NEAR(transpose.min_eigenvalue, -1, 1e-14);
    // Amplitude damping is CP with a Choi zero eigenvalue.
    EXPECT_TRUE(is_completely_positive(ptm_from_params({std::exp(-1.0), std::exp(-1.0), std::exp(-2.0),
                                                        -(1 - std::exp(-2.0))}))
                    .completely_positive);
}

TEST(core, cp_grid_matches_tetrahedron) {
    const int n = 50;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const double l1 = -1 + 2.0 * i / (n - 1);
                const double l2 = -1 + 2.0 * j / (n - 1);
                const double l3 = -1 + 2.0 * k / (n - 1);
                const bool inside = 1 + l3 >= std::abs(l1 + l2) - 1e-10 && 1 - l3 >= std::abs(l1 - l2) - 1e-10;
                ASSERT_EQ(is_completely_positive(PauliChannelParams{l1, l2, l3, 0}).completely_positive, inside)
                    << l1 << " " << l2 << " " << l3;
            }
        }
    }
}

TEST(core, unital_and_tp_residuals) {
    const QubitChannel c = ptm_from_params({0.5, 0.4, 0.3, 0.2});
    EXPECT_NEAR(unitality_residual(c.map()), 0.2, 1e-15);
    EXPECT_EQ(trace_preservation_residual(c.map()), 0);
    EXPECT_FALSE(is_unital(c));
    EXPECT_TRUE(is_unital(ptm_from_params({0.5, 0.4, 0.3, 0})));
    EXPECT_TRUE(is_trace_preserving(c.map()));
    EXPECT_NEAR(trace_preservation_residual(c.map().adjoint()), 0.2, 1e-15);
}

TEST(core, interior_examples) {
    EXPECT_FALSE(is_interior(PauliChannelParams{1, 1, 1, 0}));
    EXPECT_FALSE(is_interior(QubitChannel()));
    EXPECT_TRUE(is_interior(PauliChannelParams{0.5, 0.5, 0.5, 0}));
    EXPECT_TRUE(is_interior(ptm_from_params({0.5, 0.5, 0.5, 0})));
    const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
    const PauliChannelParams amplitude_damping{e1, e1, e2, -(1 - e2)};
    EXPECT_FALSE(is_interior(amplitude_damping));
    EXPECT_FALSE(is_interior(ptm_from_params(amplitude_damping)));
}

TEST(core, max_output_norm_matches_planar_oracle) {
    // For diag(l1, l2, l3) + t3 z the maximum lives in a plane containing z:
    // r^2(z) = l^2 (1 - z^2) + (l3 z + t3)^2 with l = max(|l1|, |l2|).
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const PauliChannelParams p = random_family_point(rng);
        const double l = std::max(std::abs(p.lambda1), std::abs(p.lambda2));
        auto r2 = [&](double z) { return l * l * (1 - z * z) + std::pow(p.lambda3 * z + p.t3, 2); };
        double best = std::max(r2(-1), r2(1));
        const double a = p.lambda3 * p.lambda3 - l * l;
        if (a < 0) {
            const double z = -p.lambda3 * p.t3 / a;
            if (std::abs(z) <= 1) {
                best = std::max(best, r2(z));
            }
        }
        EXPECT_NEAR(max_output_bloch_norm(ptm_from_params(p)), std::sqrt(best), 1e-9);
    }
}

TEST(core, interior_paths_agree_away_from_boundary) {
    Rng rng(12);
    int checked = 0;
    while (checked < 300) {
        const PauliChannelParams p = random_family_point(rng);
        const double margin = 1 - std::abs(p.t3) - std::abs(p.lambda3);
        if (std::abs(margin) < 1e-6) {
            continue;
        }
        EXPECT_EQ(is_interior(p), is_interior(ptm_from_params(p)));
        ++checked;
    }
}

TEST(core, fibonacci_points_on_sphere) {
    const auto pts = fibonacci_sphere(500);
    ASSERT_EQ(pts.size(), 500u);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto &v : pts) {
        EXPECT_NEAR(v.norm(), 1, 1e-14);
        mean += v / 500.0;
    }
    EXPECT_LT(mean.norm(), 1e-2);
}

TEST(core, binary_entropy_values) {
    EXPECT_EQ(binary_entropy(0), 0);
    EXPECT_EQ(binary_entropy(1), 0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1);
    EXPECT_NEAR(binary_entropy(0.25), 0.8112781244591328, 1e-15);
    EXPECT_EQ(binary_entropy(-1e-13), 0);
    EXPECT_THROW(binary_entropy(1.1), std::domain_error);
    EXPECT_THROW(binary_entropy(std::nan("")), std::domain_error);
}

TEST(core, entropy_examples) {
    EXPECT_DOUBLE_EQ(von_neumann_entropy(QubitDensity()), 1);
    EXPECT_EQ(von_neumann_entropy(bloch_to_density({0, 1, 0})), 0);
    EXPECT_NEAR(bloch_entropy(0.5), binary_entropy(0.25), 1e-15);
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        const QubitDensity rho = bloch_to_density(random_bloch(rng));
        Eigen::SelfAdjointEigenSolver<Matrix2c> es(rho.matrix);
        double h = 0;
        for (int k = 0; k < 2; ++k) {
            const double mu = es.eigenvalues()(k);
            h -= mu > 0 ? mu * std::log2(mu) : 0;
        }
        ASSERT_NEAR(von_neumann_entropy(rho), h, 1e-12);
        ASSERT_NEAR(von_neumann_entropy(rho), binary_entropy((1 - density_to_bloch(rho).norm()) / 2), 1e-12);
    }
}

TEST(core, operator_norm_matches_svd) {
    EXPECT_DOUBLE_EQ(operator_norm(Matrix2c::Identity()), 1);
    Matrix2c d;
    d << 0.3, 0, 0, 1.7;
    EXPECT_DOUBLE_EQ(operator_norm(d), 1.7);
    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        Matrix2c k;
        k << std::complex<double>(rng.normal(), rng.normal()), std::complex<double>(rng.normal(), rng.normal()),
            std::complex<double>(rng.normal(), rng.normal()), std::complex<double>(rng.normal(), rng.normal());
        Eigen::JacobiSVD<Matrix2c> svd(k);
        ASSERT_NEAR(operator_norm(k), svd.singularValues()(0), 1e-12 * svd.singularValues()(0));
        ASSERT_GE(operator_norm(k) * operator_norm(k.inverse()), 1 - 1e-12);
    }
}

TEST(core, scaling_and_compose) {
    Matrix2c k;
    k << 1, 0.5i, 0, 2;
    const ScalingOp op{k};
    Matrix2c x;
    x << 0.6, 0.1 - 0.2i, 0.1 + 0.2i, 0.4;
    EXPECT_LT((apply_scaling(op, x) - op.as_map().apply(x)).norm(), 1e-14);

    const QubitChannel a = ptm_from_params({0.5, 0.4, 0.3, 0.2});
    const QubitChannel b = ptm_from_params({0.9, -0.8, 0.7, 0.1});
    const QubitChannel ab = compose(a, b);
    EXPECT_LT((ab.apply(x) - a.apply(b.apply(x))).norm(), 1e-15);
    const QubitMap m = compose(op.as_map(), a.map());
    EXPECT_LT((m.apply(x) - apply_scaling(op, a.apply(x))).norm(), 1e-14);
}

TEST(core, adjoint_is_hilbert_schmidt_adjoint) {
    Rng rng(9);
    const QubitChannel c = random_channel(rng);
    Matrix2c x, y;
    x << 0.2, 0.3i, -0.3i, 0.8;
    y << 1.5, 0.1, 0.1, -0.5;
    const auto lhs = (c.apply(x).adjoint() * y).trace();
    const auto rhs = (x.adjoint() * c.map().adjoint().apply(y)).trace();
    EXPECT_NEAR(std::abs(lhs - rhs), 0, 1e-14);
}

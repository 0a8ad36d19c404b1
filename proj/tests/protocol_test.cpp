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

#include "qcap/protocol.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "gtest/gtest.h"
#include "qcap/capacity.hpp"
#include "qcap/verify.hpp"

using namespace qcap;

namespace {

Matrix2c ket_bra(int a, int b) {
    Matrix2c m = Matrix2c::Zero();
    m(a, b) = 1;
    return m;
}

Matrix2c diag(double x, double y) {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = x;
    m(1, 1) = y;
    return m;
}

// Phi^{(x)n}[X] = sum over Kraus strings (K_i (x) K_j ...) X (...)^dag.
MatrixXc kraus_tensor_oracle(const QubitChannel &c, const MatrixXc &x, int n) {
    const auto kraus = kraus_from_choi(choi_from_channel(c));
    std::vector<MatrixXc> strings = {MatrixXc::Identity(1, 1)};
    for (int q = 0; q < n; ++q) {
        std::vector<MatrixXc> next;
        for (const auto &s : strings) {
            for (const auto &k : kraus) {
                next.push_back(Eigen::kroneckerProduct(s, k).eval());
            }
        }
        strings = std::move(next);
    }
    MatrixXc out = MatrixXc::Zero(x.rows(), x.cols());
    for (const auto &s : strings) {
        out += s * x * s.adjoint();
    }
    return out;
}

MatrixXc random_hermitian(Rng &rng, Eigen::Index dim) {
    MatrixXc g(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            g(r, c) = {rng.normal(), rng.normal()};
        }
    }
    return (g + g.adjoint()) / 2.0;
}

QubitChannel random_interior_channel(Rng &rng) {
    QubitChannel c = random_channel(rng);
    while (!is_interior(c)) {
        c = random_channel(rng);
    }
    return c;
}

}  // namespace

TEST(protocol, code_validation) {
    EXPECT_THROW(Code(0, {}), std::invalid_argument);
    EXPECT_THROW(Code(4, {}), std::invalid_argument);
    EXPECT_THROW(Code(2, {{ket_bra(0, 0)}}), std::invalid_argument);
    EXPECT_THROW(Code(1, {{diag(1.5, -0.5)}}), std::invalid_argument);
    const Code code(2, {{ket_bra(0, 0), ket_bra(1, 1)}});
    const MatrixXc w = code.codeword(0);
    ASSERT_EQ(w.rows(), 4);
    EXPECT_EQ(w(1, 1), std::complex<double>(1));
    EXPECT_NEAR(w.trace().real(), 1, 1e-15);
}

TEST(protocol, povm_completion) {
    const Povm p(1, {MatrixXc(diag(0.5, 0)), MatrixXc(diag(0.25, 0.25))});
    EXPECT_EQ(p.size(), 2u);
    EXPECT_LT((p.element(0) - MatrixXc(diag(0.25, 0.75))).norm(), 1e-15);
    EXPECT_THROW(Povm(1, {MatrixXc(diag(0.7, 0)), MatrixXc(diag(0.7, 0))}), std::invalid_argument);
    EXPECT_THROW(Povm(1, {MatrixXc(diag(-0.1, 0))}), std::invalid_argument);
    EXPECT_THROW(Povm(2, {MatrixXc(diag(0.1, 0))}), std::invalid_argument);
}

TEST(protocol, tensor_power_matches_kronecker) {
    Matrix2c k;
    k << 1, 2, 3, 4;
    const MatrixXc k3 = tensor_power(k, 3);
    const MatrixXc direct = Eigen::kroneckerProduct(Eigen::kroneckerProduct(k, k).eval(), k).eval();
    EXPECT_EQ((k3 - direct).norm(), 0);
}

TEST(protocol, apply_tensor_power_matches_kraus_oracle) {
    Rng rng(41);
    for (int n = 1; n <= 3; ++n) {
        for (int i = 0; i < 10; ++i) {
            const QubitChannel c = random_channel(rng);
            const MatrixXc x = random_hermitian(rng, Eigen::Index{1} << n);
            EXPECT_LT((apply_tensor_power(c.map(), x, n) - kraus_tensor_oracle(c, x, n)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(protocol, apply_tensor_power_on_product_states) {
    Rng rng(42);
    const QubitChannel c = random_channel(rng);
    const Code code = random_code(rng, 2, 1);
    const MatrixXc out = apply_tensor_power(c.map(), code.codeword(0), 2);
    const MatrixXc expected =
        Eigen::kroneckerProduct(c.apply(code.factors(0)[0]), c.apply(code.factors(0)[1])).eval();
    EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(protocol, modify_code_examples) {
    Rng rng(43);
    const Code code = random_code(rng, 2, 4);
    const Code same = modify_code(code, ScalingOp{});
    for (std::size_t i = 0; i < code.size(); ++i) {
        EXPECT_LT((same.codeword(i) - code.codeword(i)).norm(), 1e-15);
    }
    const Code eigen(2, {{ket_bra(1, 1), ket_bra(1, 1)}});
    const Code scaled = modify_code(eigen, ScalingOp{diag(1, 0.5)});
    EXPECT_LT((scaled.codeword(0) - eigen.codeword(0)).norm(), 1e-15);

    Matrix2c b;
    b << 1.3, std::complex<double>(0.2, 0.1), std::complex<double>(0.2, -0.1), 0.7;
    const Code modified = modify_code(code, ScalingOp{b});
    for (std::size_t i = 0; i < modified.size(); ++i) {
        const MatrixXc w = modified.codeword(i);
        EXPECT_NEAR(w.trace().real(), 1, 1e-12);
        const MatrixXc big = tensor_power(b, 2);
        MatrixXc expected = big * code.codeword(i) * big.adjoint();
        expected /= expected.trace().real();
        EXPECT_LT((w - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
    EXPECT_THROW(modify_code(code, ScalingOp{diag(1, 0)}), std::invalid_argument);
}

TEST(protocol, modify_povm_examples) {
    const Povm projective(1, {MatrixXc(ket_bra(0, 0)), MatrixXc(ket_bra(1, 1))});
    const Povm same = modify_povm(projective, ScalingOp{});
    EXPECT_LT((same.element(0) - projective.element(0)).norm(), 1e-15);
    EXPECT_LT((same.element(1) - projective.element(1)).norm(), 1e-15);

    // A = diag(2, 1): elements become diag(1, 0) and diag(0, 1/4), completion diag(0, 3/4).
    const Povm scaled = modify_povm(projective, ScalingOp{diag(2, 1)});
    EXPECT_LT((scaled.element(1) - MatrixXc(diag(1, 0))).norm(), 1e-15);
    EXPECT_LT((scaled.element(2) - MatrixXc(diag(0, 0.25))).norm(), 1e-15);
    EXPECT_LT((scaled.element(0) - MatrixXc(diag(0, 0.75))).norm(), 1e-15);
}

TEST(protocol, modified_povm_complete_and_psd) {
    Rng rng(44);
    for (int n = 1; n <= 3; ++n) {
        for (int i = 0; i < 30; ++i) {
            const QubitChannel phi = random_interior_channel(rng);
            const ScalingPair s = sinkhorn_iterate(phi);
            const Povm tilde = modify_povm(random_povm(rng, n, 4), ScalingOp{s.a});
            MatrixXc sum = MatrixXc::Zero(1 << n, 1 << n);
            for (std::size_t j = 0; j <= tilde.size(); ++j) {
                sum += tilde.element(j);
                Eigen::SelfAdjointEigenSolver<MatrixXc> es(tilde.element(j));
                EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
            }
            EXPECT_LT((sum - MatrixXc::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(protocol, outcome_probability_examples) {
    const Povm basis(1, {MatrixXc(ket_bra(0, 0)), MatrixXc(ket_bra(1, 1))});
    const Code code(1, {{ket_bra(0, 0)}, {ket_bra(1, 1)}});
    const QubitMap identity;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 1; j <= 2; ++j) {
            EXPECT_NEAR(outcome_probability(identity, code.codeword(i), basis.element(j), 1), i + 1 == j ? 1 : 0,
                        1e-15);
        }
    }

    Rng rng(45);
    const QubitMap tracing = ptm_from_params({0, 0, 0, 0}).map();
    const Povm povm = random_povm(rng, 2, 3);
    const Code words = random_code(rng, 2, 2);
    for (std::size_t j = 0; j <= povm.size(); ++j) {
        EXPECT_NEAR(outcome_probability(tracing, words.codeword(0), povm.element(j), 2),
                    povm.element(j).trace().real() / 4, 1e-14);
    }

    const QubitChannel c = random_channel(rng);
    for (std::size_t i = 0; i < words.size(); ++i) {
        double total = 0;
        for (std::size_t j = 0; j <= povm.size(); ++j) {
            const double p = outcome_probability(c.map(), words.codeword(i), povm.element(j), 2);
            EXPECT_GE(p, -1e-12);
            EXPECT_LE(p, 1 + 1e-12);
            total += p;
        }
        EXPECT_NEAR(total, 1, 1e-12);
    }
}

TEST(protocol, rescaling_identity_on_random_instances) {
    Rng rng(46);
    for (int n = 1; n <= 3; ++n) {
        for (int i = 0; i < 100; ++i) {
            const QubitChannel phi = random_interior_channel(rng);
            const ScalingPair s = sinkhorn_iterate(phi);
            const Code code = random_code(rng, n, 3);
            const Povm povm = random_povm(rng, n, 3);
            ASSERT_LT(verify_rescaling_identity(phi, unitalized(phi, s), s, code, povm), 1e-11) << n;
        }
    }
}

TEST(protocol, rescaling_identity_with_identity_scalings) {
    Rng rng(47);
    const QubitChannel phi = random_channel(rng);
    const Code code = random_code(rng, 2, 3);
    const Povm povm = random_povm(rng, 2, 3);
    EXPECT_LT(verify_rescaling_identity(phi, phi.map(), ScalingPair(), code, povm), 1e-15);
}

TEST(protocol, success_probability_examples) {
    const Code code(2, {{ket_bra(0, 0), ket_bra(1, 1)}});
    const SuccessProbability unit = success_probability(code.codeword(0), ScalingOp{}, ScalingOp{}, 2);
    EXPECT_DOUBLE_EQ(unit.probability, 1);
    EXPECT_DOUBLE_EQ(unit.bound, 1);

    const SuccessProbability scalar =
        success_probability(code.codeword(0), ScalingOp{Matrix2c::Identity() * 1.7}, ScalingOp{Matrix2c::Identity() * 0.4}, 2);
    EXPECT_NEAR(scalar.probability, scalar.bound, 1e-14);

    // GAD pair at p = 0.3, gamma t = 1; the worst codeword maximizes tr[B rho B^dag].
    const ScalingPair s = family_scaling_pair(gad_params(0.3, 1.0));
    const int worst = std::abs(s.b(0, 0)) >= std::abs(s.b(1, 1)) ? 0 : 1;
    const Code worst_code(2, {{ket_bra(worst, worst), ket_bra(worst, worst)}});
    const SuccessProbability gad = success_probability(worst_code.codeword(0), ScalingOp{s.a}, ScalingOp{s.b}, 2);
    EXPECT_TRUE(gad.holds());
    EXPECT_NEAR(gad.probability, gad.bound, 1e-14);
    EXPECT_NEAR(gad.bound, std::pow(s.norm_product(), -4), 1e-15);
}

TEST(protocol, success_probability_bound_and_rate_penalty) {
    Rng rng(48);
    for (int n = 1; n <= 3; ++n) {
        for (int i = 0; i < 100; ++i) {
            const QubitChannel phi = random_interior_channel(rng);
            const ScalingPair s = sinkhorn_iterate(phi);
            const Code code = random_code(rng, n, 2);
            for (std::size_t w = 0; w < code.size(); ++w) {
                const SuccessProbability sp = success_probability(code.codeword(w), ScalingOp{s.a}, ScalingOp{s.b}, n);
                ASSERT_TRUE(sp.holds());
                ASSERT_GE(std::log2(sp.probability) / n, -2 * std::log2(s.norm_product()) - 1e-9);
            }
        }
    }
}

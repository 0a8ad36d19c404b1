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
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qcap {

namespace {

double min_eigenvalue(const MatrixXc &m) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void check_block_length(int n) {
    if (n < 1 || n > kMaxBlockLength) {
        throw std::invalid_argument("block length must lie in [1, " + std::to_string(kMaxBlockLength) + "]");
    }
}

MatrixXc sqrt_inverse_psd(const MatrixXc &m) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver(m);
    const Eigen::VectorXd inv_root = solver.eigenvalues().cwiseSqrt().cwiseInverse();
    return solver.eigenvectors() * inv_root.cast<std::complex<double>>().asDiagonal() *
           solver.eigenvectors().adjoint();
}

}  // namespace

Code::Code(int block_length, std::vector<std::vector<Matrix2c>> codewords)
    : n_(block_length), codewords_(std::move(codewords)) {
    check_block_length(n_);
    for (const auto &word : codewords_) {
        if (static_cast<int>(word.size()) != n_) {
            throw std::invalid_argument("codeword has the wrong number of factors");
        }
        for (const auto &factor : word) {
            if (!QubitDensity{factor}.is_valid(1e-12)) {
                throw std::invalid_argument("codeword factor is not a density matrix");
            }
        }
    }
}

MatrixXc Code::codeword(std::size_t i) const {
    const auto &word = codewords_.at(i);
    MatrixXc full = word[0];
    for (int k = 1; k < n_; ++k) {
        MatrixXc next = Eigen::kroneckerProduct(full, word[k]).eval();
        full = std::move(next);
    }
    return full;
}

Povm::Povm(int block_length, std::vector<MatrixXc> elements) : n_(block_length), elements_(std::move(elements)) {
    check_block_length(n_);
    const Eigen::Index dim = Eigen::Index{1} << n_;
    completion_ = MatrixXc::Identity(dim, dim);
    for (const auto &m : elements_) {
        if (m.rows() != dim || m.cols() != dim) {
            throw std::invalid_argument("POVM element has the wrong dimension");
        }
        if (min_eigenvalue(m) < -kPsdTolerance) {
            throw std::invalid_argument("POVM element is not positive semidefinite");
        }
        completion_ -= m;
    }
    if (min_eigenvalue(completion_) < -kPsdTolerance) {
        throw std::invalid_argument("POVM elements sum to more than the identity");
    }
}

MatrixXc tensor_power(const Matrix2c &k, int n) {
    MatrixXc out = k;
    for (int i = 1; i < n; ++i) {
        MatrixXc next = Eigen::kroneckerProduct(out, k).eval();
        out = std::move(next);
    }
    return out;
}

MatrixXc apply_tensor_power(const QubitMap &phi, const MatrixXc &x, int n) {
    // Images of the matrix units |a><b|.
    std::array<Matrix2c, 4> images;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Matrix2c unit = Matrix2c::Zero();
            unit(a, b) = 1;
            images[2 * a + b] = phi.apply(unit);
        }
    }
    const Eigen::Index dim = x.rows();
    MatrixXc cur = x;
    for (int q = 0; q < n; ++q) {
        // Qubit 0 is the most significant bit of the row/column index.
        const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
        MatrixXc next = MatrixXc::Zero(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                const std::complex<double> v = cur(r, c);
                if (v == 0.0) {
                    continue;
                }
                const int a = (r & bit) ? 1 : 0;
                const int b = (c & bit) ? 1 : 0;
                const Matrix2c &img = images[2 * a + b];
                const Eigen::Index r0 = r & ~bit;
                const Eigen::Index c0 = c & ~bit;
                next(r0, c0) += v * img(0, 0);
                next(r0, c0 | bit) += v * img(0, 1);
                next(r0 | bit, c0) += v * img(1, 0);
                next(r0 | bit, c0 | bit) += v * img(1, 1);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Code modify_code(const Code &code, const ScalingOp &b) {
    const double scale = operator_norm(b.k);
    if (scale == 0 || std::abs(b.k.determinant()) < 1e-14 * scale * scale) {
        throw std::invalid_argument("modify_code: scaling operator is singular");
    }
    std::vector<std::vector<Matrix2c>> words;
    words.reserve(code.size());
    for (std::size_t i = 0; i < code.size(); ++i) {
        std::vector<Matrix2c> factors;
        for (const auto &rho : code.factors(i)) {
            Matrix2c out = apply_scaling(b, rho);
            out /= out.trace().real();
            factors.push_back((out + out.adjoint()) / 2.0);
        }
        words.push_back(std::move(factors));
    }
    return Code(code.block_length(), std::move(words));
}

Povm modify_povm(const Povm &povm, const ScalingOp &a) {
    const int n = povm.block_length();
    const MatrixXc big = tensor_power(a.k, n);
    const double scale = std::pow(operator_norm(a.k), 2 * n);
    std::vector<MatrixXc> elements;
    elements.reserve(povm.size());
    for (std::size_t j = 1; j <= povm.size(); ++j) {
        MatrixXc m = big.adjoint() * povm.element(j) * big / scale;
        elements.push_back((m + m.adjoint()) / 2.0);
    }
    try {
        return Povm(n, std::move(elements));
    } catch (const std::invalid_argument &e) {
        throw std::logic_error(std::string("modify_povm: modified POVM is invalid: ") + e.what());
    }
}

double outcome_probability(const QubitMap &channel, const MatrixXc &codeword, const MatrixXc &element, int n) {
    return (apply_tensor_power(channel, codeword, n) * element).trace().real();
}

double verify_rescaling_identity(const QubitChannel &phi, const QubitMap &psi, const ScalingPair &s,
                                 const Code &code, const Povm &povm) {
    const int n = code.block_length();
    if (povm.block_length() != n) {
        throw std::invalid_argument("code and POVM block lengths differ");
    }
    const Code tilde_code = modify_code(code, ScalingOp{s.b});
    const Povm tilde_povm = modify_povm(povm, ScalingOp{s.a});
    const MatrixXc big_b = tensor_power(s.b, n);
    const double a_scale = std::pow(operator_norm(s.a), 2 * n);

    double deviation = 0;
    for (std::size_t i = 0; i < code.size(); ++i) {
        const MatrixXc rho = code.codeword(i);
        const double normalization = (big_b * rho * big_b.adjoint()).trace().real();
        const MatrixXc tilde_out = apply_tensor_power(phi.map(), tilde_code.codeword(i), n);
        const MatrixXc psi_out = apply_tensor_power(psi, rho, n);
        for (std::size_t j = 1; j <= povm.size(); ++j) {
            const double p_tilde = (tilde_out * tilde_povm.element(j)).trace().real();
            const double p_psi = (psi_out * povm.element(j)).trace().real();
            deviation = std::max(deviation, std::abs(p_tilde * normalization * a_scale - p_psi));
        }
    }
    return deviation;
}

SuccessProbability success_probability(const MatrixXc &codeword, const ScalingOp &a, const ScalingOp &b, int n) {
    const MatrixXc big_b = tensor_power(b.k, n);
    const double normalization = (big_b * codeword * big_b.adjoint()).trace().real();
    const double norm_a = operator_norm(a.k);
    const double norm_b = operator_norm(b.k);
    SuccessProbability out;
    out.probability = 1 / (normalization * std::pow(norm_a, 2 * n));
    out.bound = std::pow(norm_a * norm_b, -2 * n);
    return out;
}

Code random_code(Rng &rng, int n, std::size_t size) {
    std::vector<std::vector<Matrix2c>> words;
    for (std::size_t i = 0; i < size; ++i) {
        std::vector<Matrix2c> factors;
        for (int k = 0; k < n; ++k) {
            const double z = rng.uniform(-1, 1);
            const double phi = rng.uniform(0, 2 * std::numbers::pi);
            const double r = std::cbrt(rng.uniform());
            const double s = std::sqrt(1 - z * z);
            factors.push_back(bloch_to_density({r * s * std::cos(phi), r * s * std::sin(phi), r * z}).matrix);
        }
        words.push_back(std::move(factors));
    }
    return Code(n, std::move(words));
}

Povm random_povm(Rng &rng, int n, std::size_t size) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<MatrixXc> raw;
    MatrixXc sum = MatrixXc::Zero(dim, dim);
    for (std::size_t j = 0; j < size; ++j) {
        MatrixXc g(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                g(r, c) = {rng.normal(), rng.normal()};
            }
        }
        raw.push_back(g * g.adjoint());
        sum += raw.back();
    }
    const MatrixXc norm = sqrt_inverse_psd(sum);
    std::vector<MatrixXc> elements;
    for (auto &m : raw) {
        MatrixXc e = norm * m * norm;
        // Shave a relative 1e-12 so the completion stays PSD under rounding.
        elements.push_back((e + e.adjoint()) / 2.0 * (1 - 1e-12));
    }
    return Povm(n, std::move(elements));
}

}  // namespace qcap

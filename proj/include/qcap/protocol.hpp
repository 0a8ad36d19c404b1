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

#ifndef QCAP_PROTOCOL_HPP
#define QCAP_PROTOCOL_HPP

// Finite-block checks of the code transport behind the capacity lower bound:
// codewords are conjugated by B (x) ... (x) B and renormalized, measurement
// elements by A^dagger (x) ... (x) A over |A|^{2n}, and outcome 0 absorbs the
// missing probability.

#include <vector>

#include <Eigen/Dense>

#include "qcap/core.hpp"
#include "qcap/optimize.hpp"
#include "qcap/sinkhorn.hpp"

namespace qcap {

using MatrixXc = Eigen::MatrixXcd;

inline constexpr int kMaxBlockLength = 3;

/// Codewords that are tensor products of single-qubit density matrices.
class Code {
   public:
    /// Throws std::invalid_argument unless every codeword has `block_length`
    /// valid factors and 1 <= block_length <= kMaxBlockLength.
    Code(int block_length, std::vector<std::vector<Matrix2c>> codewords);

    int block_length() const {
        return n_;
    }
    std::size_t size() const {
        return codewords_.size();
    }
    const std::vector<Matrix2c> &factors(std::size_t i) const {
        return codewords_.at(i);
    }
    /// Full 2^n x 2^n density matrix.
    MatrixXc codeword(std::size_t i) const;

   private:
    int n_;
    std::vector<std::vector<Matrix2c>> codewords_;
};

/// Elements M_1..M_N plus the completion M_0 = I - sum_j M_j.
class Povm {
   public:
    /// Throws std::invalid_argument if an element (or the completion) has an
    /// eigenvalue below -kPsdTolerance.
    Povm(int block_length, std::vector<MatrixXc> elements);

    int block_length() const {
        return n_;
    }
    /// Number of elements excluding the completion.
    std::size_t size() const {
        return elements_.size();
    }
    /// j = 0 is the completion, j = 1..size() the listed elements.
    const MatrixXc &element(std::size_t j) const {
        return j == 0 ? completion_ : elements_.at(j - 1);
    }

   private:
    int n_;
    std::vector<MatrixXc> elements_;
    MatrixXc completion_;
};

MatrixXc tensor_power(const Matrix2c &k, int n);

/// Phi applied to every qubit of a 2^n x 2^n operator.
MatrixXc apply_tensor_power(const QubitMap &phi, const MatrixXc &x, int n);

/// B^{(x)n} rho B^dagger^{(x)n} / tr[...], factor by factor.
/// Throws std::invalid_argument for a (numerically) singular B.
Code modify_code(const Code &code, const ScalingOp &b);

/// A^dagger^{(x)n} M_j A^{(x)n} / |A|^{2n} for j >= 1 with a fresh completion.
/// Throws std::logic_error if the new completion is not PSD.
Povm modify_povm(const Povm &povm, const ScalingOp &a);

/// tr[Phi^{(x)n}[rho] M].
double outcome_probability(const QubitMap &channel, const MatrixXc &codeword, const MatrixXc &element, int n);

/// Largest |p~(j|i) tr[B^{(x)n} rho_i B^dagger^{(x)n}] |A|^{2n} - p_Psi(j|i)| over
/// codewords i and outcomes j >= 1, where p~ uses the modified code and POVM
/// sent through `phi` and p_Psi the original ones through `psi`.
double verify_rescaling_identity(const QubitChannel &phi, const QubitMap &psi, const ScalingPair &s,
                                 const Code &code, const Povm &povm);

struct SuccessProbability {
    /// 1 / (tr[B^{(x)n} rho B^dagger^{(x)n}] |A|^{2n}).
    double probability = 0;
    /// (|A| |B|)^{-2n}.
    double bound = 0;

    bool holds(double tol = 1e-12) const {
        return probability >= bound - tol;
    }
};

SuccessProbability success_probability(const MatrixXc &codeword, const ScalingOp &a, const ScalingOp &b, int n);

/// Product codewords with factors drawn uniformly from the Bloch ball.
Code random_code(Rng &rng, int n, std::size_t size);
/// Normalized random PSD elements; the completion is zero up to rounding.
Povm random_povm(Rng &rng, int n, std::size_t size);

}  // namespace qcap

#endif

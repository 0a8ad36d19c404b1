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

#include "qcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qcap/capacity.hpp"
#include "qcap/format.hpp"
#include "qcap/protocol.hpp"
#include "qcap/sinkhorn.hpp"

namespace qcap {

QubitChannel random_channel(Rng &rng) {
    Eigen::Matrix<std::complex<double>, 8, 2> g;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 2; ++c) {
            g(r, c) = {rng.normal(), rng.normal()};
        }
    }
    const Matrix2c gram = g.adjoint() * g;
    const Eigen::Matrix<std::complex<double>, 8, 2> v = g * inverse_2x2(sqrt_positive_2x2(gram));
    Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
    for (int k = 0; k < 4; ++k) {
        t += QubitMap::conjugation(v.block<2, 2>(2 * k, 0)).ptm();
    }
    return QubitChannel(t);
}

PauliChannelParams random_family_point(Rng &rng, double margin) {
    for (;;) {
        PauliChannelParams p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (std::abs(p.t3) + std::abs(p.lambda3) < 1 - margin && is_completely_positive(p).completely_positive) {
            return p;
        }
    }
}

BlochVector random_bloch(Rng &rng) {
    const double z = rng.uniform(-1, 1);
    const double phi = rng.uniform(0, 2 * std::numbers::pi);
    const double r = std::cbrt(rng.uniform());
    const double s = std::sqrt(1 - z * z);
    return {r * s * std::cos(phi), r * s * std::sin(phi), r * z};
}

bool VerificationReport::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto &p) { return p.passed(); });
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json props = nlohmann::json::array();
    long failed = 0;
    for (const auto &p : properties) {
        props.push_back({{"suite", p.suite},
                         {"name", p.name},
                         {"checked", p.checked},
                         {"failed", p.failed},
                         {"max_deviation", round_significant(p.max_deviation)},
                         {"tolerance", p.tolerance},
                         {"passed", p.passed()}});
        failed += p.passed() ? 0 : 1;
    }
    return {{"seed", seed}, {"passed", passed()}, {"failed_properties", failed}, {"properties", props}};
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    for (const auto &p : properties) {
        out << (p.passed() ? "PASS " : "FAIL ") << p.suite << "/" << p.name << "  checked " << p.checked
            << "  failed " << p.failed << "  max deviation " << format_number(p.max_deviation) << " (tol "
            << format_number(p.tolerance) << ")\n";
    }
    return out.str();
}

namespace {

class Tally {
   public:
    Tally(std::string suite, std::string name, double tolerance) {
        r_.suite = std::move(suite);
        r_.name = std::move(name);
        r_.tolerance = tolerance;
    }
    void check(double deviation) {
        ++r_.checked;
        if (!(deviation <= r_.tolerance)) {
            ++r_.failed;
        }
        if (std::isnan(deviation) || deviation > r_.max_deviation) {
            r_.max_deviation = deviation;
        }
    }
    void fail() {
        ++r_.checked;
        ++r_.failed;
    }
    PropertyResult result() const {
        return r_;
    }

   private:
    PropertyResult r_;
};

constexpr double kFault = 1e-3;

ScalingPair faulty(ScalingPair s, bool fault) {
    if (fault) {
        s.a(0, 0) += kFault;
    }
    return s;
}

double entropy_by_eigensolve(const Matrix2c &rho) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> solver(rho, Eigen::EigenvaluesOnly);
    double h = 0;
    for (int k = 0; k < 2; ++k) {
        const double mu = solver.eigenvalues()(k);
        if (mu > 0) {
            h -= mu * std::log2(mu);
        }
    }
    return h;
}

Matrix2c random_matrix(Rng &rng) {
    Matrix2c m;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            m(r, c) = {rng.normal(), rng.normal()};
        }
    }
    return m;
}

void core_suite(Rng &rng, bool fault, std::vector<PropertyResult> &out) {
    const std::string suite = "core";
    {
        Tally t(suite, "density_bloch_round_trip", 1e-14);
        for (int i = 0; i < 1000; ++i) {
            const BlochVector b = random_bloch(rng);
            const BlochVector back = density_to_bloch(bloch_to_density(b));
            t.check((back.vec() - b.vec()).cwiseAbs().maxCoeff() + (fault ? kFault : 0));
        }
        out.push_back(t.result());
    }
    {
        Tally t(suite, "ptm_matches_kraus", 1e-10);
        for (int i = 0; i < 1000; ++i) {
            const QubitChannel c = random_channel(rng);
            const Matrix2c rho = bloch_to_density(random_bloch(rng)).matrix;
            Matrix2c kraus_out = Matrix2c::Zero();
            for (const auto &k : kraus_from_choi(choi_from_channel(c))) {
                kraus_out += k * rho * k.adjoint();
            }
            t.check((c.apply(rho) - kraus_out).cwiseAbs().maxCoeff());
        }
        out.push_back(t.result());
    }
    {
        Tally t(suite, "cp_grid_without_translation", 0.5);
        const int n = 50;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    const double l1 = -1 + 2.0 * i / (n - 1);
                    const double l2 = -1 + 2.0 * j / (n - 1);
                    const double l3 = -1 + 2.0 * k / (n - 1);
                    const bool inequality =
                        1 + l3 >= std::abs(l1 + l2) - 1e-10 && 1 - l3 >= std::abs(l1 - l2) - 1e-10;
                    const bool cp = is_completely_positive(PauliChannelParams{l1, l2, l3, 0}).completely_positive;
                    t.check(inequality == cp ? 0 : 1);
                }
            }
        }
        out.push_back(t.result());
    }
    {
        Tally t(suite, "entropy_consistency", 1e-12);
        for (int i = 0; i < 1000; ++i) {
            const QubitDensity rho = bloch_to_density(random_bloch(rng));
            t.check(std::abs(von_neumann_entropy(rho) - entropy_by_eigensolve(rho.matrix)));
        }
        out.push_back(t.result());
    }
    {
        Tally t(suite, "norm_times_inverse_norm", 1e-12);
        for (int i = 0; i < 1000; ++i) {
            const Matrix2c k = random_matrix(rng);
            if (std::abs(k.determinant()) < 1e-6) {
                continue;
            }
            t.check(std::max(0.0, 1 - operator_norm(k) * operator_norm(inverse_2x2(k))));
        }
        out.push_back(t.result());
    }
}

void sinkhorn_suite(Rng &rng, bool fault, std::vector<PropertyResult> &out) {
    const std::string suite = "sinkhorn";
    Tally decomposition(suite, "family_decomposition", 1e-9);
    Tally agreement(suite, "two_path_agreement", 1e-8);
    Tally gauge(suite, "gauge_invariance", 1e-10);
    Tally upsilon(suite, "upsilon_is_unital_channel", 1e-9);
    for (int i = 0; i < 200; ++i) {
        const PauliChannelParams p = random_family_point(rng, 1e-3);
        const QubitChannel phi = ptm_from_params(p);
        const ScalingPair closed = faulty(family_scaling_pair(p), fault);
        decomposition.check(verify_decomposition(phi, closed).max());

        const ScalingPair iterated = faulty(sinkhorn_iterate(phi), fault);
        const QubitMap u_closed = unitalized(phi, closed);
        const QubitMap u_iter = unitalized(phi, iterated);
        const UnitalForm f_closed = family_unital_params(p);
        try {
            const UnitalForm f_iter = unital_diagonalize(u_iter);
            double dev = 0;
            for (int k = 0; k < 3; ++k) {
                dev = std::max(dev, std::abs(f_closed.singular_values[k] - f_iter.singular_values[k]));
                dev = std::max(dev, std::abs(f_closed.lambda[k] - u_iter.ptm()(k + 1, k + 1)));
            }
            agreement.check(dev);
        } catch (const std::domain_error &) {
            agreement.fail();
        }

        const double c = std::exp(rng.uniform(std::log(0.2), std::log(5.0)));
        const ScalingPair moved = closed.rescaled(c);
        const double product = closed.norm_product() * closed.inverse_norm_product();
        gauge.check(std::max((unitalized(phi, moved).ptm() - u_closed.ptm()).cwiseAbs().maxCoeff(),
                             std::abs(moved.norm_product() * moved.inverse_norm_product() - product) / product));

        for (const QubitMap *u : {&u_closed, &u_iter}) {
            const bool cp = is_completely_positive(*u, 1e-9).completely_positive;
            upsilon.check(cp ? std::max(unitality_residual(*u), trace_preservation_residual(*u)) : 1.0);
        }
    }
    out.push_back(decomposition.result());
    out.push_back(agreement.result());
    out.push_back(gauge.result());
    out.push_back(upsilon.result());

    {
        Tally t(suite, "general_channel_decomposition", 1e-9);
        for (int i = 0; i < 100; ++i) {
            const QubitChannel phi = random_channel(rng);
            if (!is_interior(phi)) {
                continue;
            }
            t.check(verify_decomposition(phi, faulty(sinkhorn_iterate(phi), fault)).max());
        }
        out.push_back(t.result());
    }
    {
        // Closed-form GAD norms along p = 10^-k at gamma t = 1.
        Tally t(suite, "gad_norm_divergence", 0);
        double last_ab = 0;
        double last_inv = 0;
        for (int k = 1; k <= 30; ++k) {
            const CapacityBounds b = gad_bounds(std::pow(10.0, -k), 1.0);
            t.check(b.norm_product > last_ab && b.inverse_norm_product > last_inv ? 0 : 1);
            last_ab = b.norm_product;
            last_inv = b.inverse_norm_product;
        }
        t.check(last_ab > 1e6 && last_inv > 1e6 ? 0 : 1);
        out.push_back(t.result());
    }
}

void capacity_suite(Rng &rng, bool fault, std::vector<PropertyResult> &out) {
    const std::string suite = "capacity";
    {
        Tally t(suite, "gad_closed_form_consistency", 1e-10);
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double p = 0.05 + 0.45 * i / 19.0;
                const double gt = 0.05 + 2.95 * j / 19.0;
                const CapacityBounds a = proposition_bounds(gad_params(p, gt));
                const CapacityBounds b = gad_bounds(p, gt);
                t.check(std::max({std::abs(a.lower_raw - b.lower_raw), std::abs(a.upper_raw - b.upper_raw),
                                  std::abs(a.unital_capacity - b.unital_capacity)}));
            }
        }
        out.push_back(t.result());
    }
    {
        Tally t(suite, "gaps_vanish_at_half", 1e-12);
        for (int j = 0; j < 20; ++j) {
            const CapacityBounds b = gad_bounds(0.5, 0.05 + 2.95 * j / 19.0);
            t.check(std::max(std::abs(b.lower_gap), std::abs(b.upper_gap)));
        }
        out.push_back(t.result());
    }
    {
        Tally t(suite, "holevo_relabel_and_merge", 1e-12);
        for (int i = 0; i < 200; ++i) {
            const QubitChannel c = random_channel(rng);
            Ensemble e;
            const int m = 2 + static_cast<int>(rng.next() % 2);
            double total = 0;
            for (int k = 0; k < m; ++k) {
                BlochVector b = random_bloch(rng);
                const Eigen::Vector3d v = b.vec().normalized();
                e.members.push_back({rng.uniform(0.1, 1), BlochVector::from(v)});
                total += e.members.back().weight;
            }
            for (auto &member : e.members) {
                member.weight /= total;
            }
            const double chi = holevo_quantity(c, e);
            Ensemble relabeled = e;
            std::reverse(relabeled.members.begin(), relabeled.members.end());
            Ensemble split = e;
            split.members[0].weight /= 2;
            split.members.push_back(split.members[0]);
            t.check(std::max(std::abs(holevo_quantity(c, relabeled) - chi), std::abs(holevo_quantity(c, split) - chi)));
        }
        out.push_back(t.result());
    }
    ChiConfig config;
    config.seed = rng.next();
    {
        Tally t(suite, "unital_chi_matches_formula", 1e-4);
        for (int i = 0; i < 4; ++i) {
            PauliChannelParams p = random_family_point(rng);
            p.t3 = 0;
            const UnitalForm form = family_unital_params(p);
            const double chi = chi_capacity_numeric(ptm_from_params(p), config).value;
            t.check(std::abs(chi - unital_capacity(form)) + (fault ? kFault : 0));
        }
        out.push_back(t.result());
    }
    {
        Tally t(suite, "chi_below_upper_bound", 1e-6);
        for (int i = 0; i < 4; ++i) {
            const PauliChannelParams p = random_family_point(rng, 1e-2);
            const double chi = chi_capacity_numeric(ptm_from_params(p), config).value;
            t.check(std::max(0.0, chi - proposition_bounds(p).upper_raw));
        }
        out.push_back(t.result());
    }
}

void protocol_suite(Rng &rng, bool fault, std::vector<PropertyResult> &out) {
    const std::string suite = "protocol";
    Tally identity(suite, "rescaling_identity", 1e-11);
    Tally success(suite, "success_probability_bound", 1e-12);
    Tally povm_check(suite, "modified_povm_complete_and_psd", 1e-10);
    Tally rate(suite, "rate_penalty", 1e-9);
    for (int n = 1; n <= kMaxBlockLength; ++n) {
        for (int i = 0; i < 100; ++i) {
            QubitChannel phi = random_channel(rng);
            while (!is_interior(phi)) {
                phi = random_channel(rng);
            }
            const ScalingPair s = sinkhorn_iterate(phi);
            const QubitMap psi = unitalized(phi, s);
            const Code code = random_code(rng, n, 3);
            const Povm povm = random_povm(rng, n, 3);
            const ScalingPair used = faulty(s, fault);
            identity.check(verify_rescaling_identity(phi, psi, used, code, povm));

            const Povm tilde = modify_povm(povm, ScalingOp{used.a});
            MatrixXc sum = tilde.element(0);
            double min_eig = Eigen::SelfAdjointEigenSolver<MatrixXc>(tilde.element(0), Eigen::EigenvaluesOnly)
                                 .eigenvalues()
                                 .minCoeff();
            for (std::size_t j = 1; j <= tilde.size(); ++j) {
                sum += tilde.element(j);
                min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<MatrixXc>(tilde.element(j),
                                                                                    Eigen::EigenvaluesOnly)
                                                .eigenvalues()
                                                .minCoeff());
            }
            const MatrixXc eye = MatrixXc::Identity(sum.rows(), sum.cols());
            povm_check.check(std::max((sum - eye).cwiseAbs().maxCoeff(), std::max(0.0, -min_eig)));

            for (std::size_t w = 0; w < code.size(); ++w) {
                const SuccessProbability sp =
                    success_probability(code.codeword(w), ScalingOp{used.a}, ScalingOp{used.b}, n);
                success.check(std::max(0.0, sp.bound - sp.probability));
                const double penalty = -2 * std::log2(used.norm_product());
                rate.check(std::max(0.0, penalty - std::log2(sp.probability) / n));
            }
        }
    }
    out.push_back(identity.result());
    out.push_back(success.result());
    out.push_back(povm_check.result());
    out.push_back(rate.result());
}

}  // namespace

VerificationReport run_verification(const std::string &suite, std::uint64_t seed, bool inject_fault) {
    if (suite != "core" && suite != "sinkhorn" && suite != "capacity" && suite != "protocol" && suite != "all") {
        throw std::invalid_argument("unknown suite '" + suite + "' (core|sinkhorn|capacity|protocol|all)");
    }
    VerificationReport report;
    report.seed = seed;
    Rng rng(seed);
    const bool all = suite == "all";
    if (all || suite == "core") {
        core_suite(rng, inject_fault, report.properties);
    }
    if (all || suite == "sinkhorn") {
        sinkhorn_suite(rng, inject_fault, report.properties);
    }
    if (all || suite == "capacity") {
        capacity_suite(rng, inject_fault, report.properties);
    }
    if (all || suite == "protocol") {
        protocol_suite(rng, inject_fault, report.properties);
    }
    return report;
}

}  // namespace qcap

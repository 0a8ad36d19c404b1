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

#include "qcap/analysis.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <exception>
#include <sstream>
#include <thread>

#include "qcap/errors.hpp"
#include "qcap/format.hpp"

namespace qcap {

using nlohmann::json;

std::uint64_t default_seed() {
    const char *env = std::getenv("QCAP_SEED");
    if (env == nullptr) {
        return kDefaultSeed;
    }
    std::uint64_t seed = 0;
    const char *end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, seed);
    if (ec != std::errc() || ptr != end || ptr == env) {
        return kDefaultSeed;
    }
    return seed;
}

ChannelSource ChannelSource::gad(double p, double gamma_t) {
    ChannelSource s;
    s.family = Family::gad;
    s.p = p;
    s.gamma_t = gamma_t;
    return s;
}

ChannelSource ChannelSource::mix(double p) {
    ChannelSource s;
    s.family = Family::mix;
    s.p = p;
    return s;
}

ChannelSource ChannelSource::custom(const PauliChannelParams &params) {
    ChannelSource s;
    s.family = Family::custom;
    s.params = params;
    return s;
}

ChannelSource ChannelSource::from_ptm(const QubitChannel &c) {
    ChannelSource s;
    s.family = Family::custom;
    s.general = c;
    return s;
}

PauliChannelParams ChannelSource::family_params() const {
    switch (family) {
        case Family::gad:
            return gad_params(p, gamma_t);
        case Family::mix:
            return mix_params(p);
        case Family::custom:
            break;
    }
    return params;
}

QubitChannel ChannelSource::channel() const {
    if (general) {
        return *general;
    }
    return ptm_from_params(family_params());
}

std::string ChannelSource::describe() const {
    std::ostringstream out;
    switch (family) {
        case Family::gad:
            out << "gad(p=" << format_number(p) << ", gamma_t=" << format_number(gamma_t) << ")";
            break;
        case Family::mix:
            out << "mix(p=" << format_number(p) << ")";
            break;
        case Family::custom:
            if (general) {
                out << "ptm";
            } else {
                out << "pauli(lambda=" << format_number(params.lambda1) << "," << format_number(params.lambda2) << ","
                    << format_number(params.lambda3) << ", t3=" << format_number(params.t3) << ")";
            }
            break;
    }
    return out.str();
}

namespace {

json number(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return round_significant(v);
}

json matrix_json(const Matrix2c &m) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) {
            row.push_back({number(m(r, c).real()), number(m(r, c).imag())});
        }
        rows.push_back(row);
    }
    return rows;
}

json triple_json(const std::array<double, 3> &v) {
    return json::array({number(v[0]), number(v[1]), number(v[2])});
}

json residual_json(const DecompositionResidual &r) {
    return {{"unitality", number(r.unitality)},
            {"trace_preservation", number(r.trace_preservation)},
            {"reconstruction", number(r.reconstruction)}};
}

json bounds_json(const CapacityBounds &b) {
    return {{"c_unital", number(b.unital_capacity)}, {"lower_gap", number(b.lower_gap)},
            {"upper_gap", number(b.upper_gap)},       {"c_lower_raw", number(b.lower_raw)},
            {"c_upper_raw", number(b.upper_raw)},     {"c_lower", number(b.lower_clamped)},
            {"c_upper", number(b.upper_clamped)}};
}

std::string triple_text(const std::array<double, 3> &v) {
    return format_number(v[0]) + " " + format_number(v[1]) + " " + format_number(v[2]);
}

std::string matrix_text(const Matrix2c &m) {
    std::string out;
    for (int r = 0; r < 2; ++r) {
        out += "  [";
        for (int c = 0; c < 2; ++c) {
            out += (c ? ", " : "") + format_number(m(r, c).real());
            if (m(r, c).imag() != 0) {
                out += (m(r, c).imag() < 0 ? "-" : "+") + format_number(std::abs(m(r, c).imag())) + "i";
            }
        }
        out += "]\n";
    }
    return out;
}

double family_margin(const ChannelSource &source) {
    if (source.general) {
        return 1 - max_output_bloch_norm(*source.general);
    }
    const auto p = source.family_params();
    return 1 - std::abs(p.t3) - std::abs(p.lambda3);
}

void require_cp(const QubitChannel &c, const std::string &what) {
    const CpReport cp = is_completely_positive(c);
    if (!cp.completely_positive) {
        throw NotCompletelyPositive(what + " is not completely positive (min Choi eigenvalue " +
                                    format_number(cp.min_eigenvalue) + ")");
    }
}

}  // namespace

AnalysisReport analyze(const ChannelSource &source, bool with_chi, const ChiConfig &chi) {
    AnalysisReport r;
    r.source = source;
    const QubitChannel channel = source.channel();
    r.ptm = channel.ptm();
    r.cp = is_completely_positive(channel);
    if (!r.cp.completely_positive) {
        throw NotCompletelyPositive(source.describe() + " is not completely positive (min Choi eigenvalue " +
                                    format_number(r.cp.min_eigenvalue) + ")");
    }
    if (!source.general) {
        r.params = source.family_params();
        r.interior = is_interior(*r.params);
    } else {
        r.interior = is_interior(channel);
    }
    if (!r.interior) {
        throw NotInterior(source.describe() + " is not an interior channel");
    }
    if (r.params) {
        r.form = family_unital_params(*r.params);
        r.pair = family_scaling_pair(*r.params);
    } else {
        r.pair = sinkhorn_iterate(channel);
        r.form = unital_diagonalize(unitalized(channel, r.pair));
    }
    r.bounds = CapacityBounds::from(unital_capacity(r.form), r.pair.norm_product(), r.pair.inverse_norm_product());
    r.residual = verify_decomposition(channel, r.pair);
    if (with_chi) {
        r.chi = chi_capacity_numeric(channel, chi);
    }
    return r;
}

json to_json(const AnalysisReport &r) {
    json out;
    out["channel"] = r.source.describe();
    if (r.params) {
        out["params"] = {{"lambda1", number(r.params->lambda1)},
                         {"lambda2", number(r.params->lambda2)},
                         {"lambda3", number(r.params->lambda3)},
                         {"t3", number(r.params->t3)}};
    }
    json ptm = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) {
            row.push_back(number(r.ptm(i, j)));
        }
        ptm.push_back(row);
    }
    out["ptm"] = ptm;
    out["completely_positive"] = r.cp.completely_positive;
    out["min_choi_eigenvalue"] = number(r.cp.min_eigenvalue);
    out["interior"] = r.interior;
    out["lambda_tilde"] = triple_json(r.form.lambda);
    out["singular_values"] = triple_json(r.form.singular_values);
    out["norm_AB"] = number(r.pair.norm_product());
    out["norm_AinvBinv"] = number(r.pair.inverse_norm_product());
    out["bounds"] = bounds_json(r.bounds);
    out["residuals"] = residual_json(r.residual);
    if (r.chi) {
        json ensemble = json::array();
        for (const auto &m : r.chi->ensemble.members) {
            ensemble.push_back({{"weight", number(m.weight)},
                                {"bloch", json::array({number(m.state.x), number(m.state.y), number(m.state.z)})}});
        }
        out["c_chi"] = number(r.chi->value);
        out["chi_ensemble"] = ensemble;
        out["chi_converged"] = r.chi->converged;
    }
    return out;
}

std::string to_text(const AnalysisReport &r) {
    std::ostringstream out;
    out << "channel               " << r.source.describe() << "\n";
    if (r.params) {
        out << "lambda                " << format_number(r.params->lambda1) << " " << format_number(r.params->lambda2)
            << " " << format_number(r.params->lambda3) << "\n";
        out << "t3                    " << format_number(r.params->t3) << "\n";
    }
    out << "completely positive   " << (r.cp.completely_positive ? "yes" : "no")
        << " (min Choi eigenvalue " << format_number(r.cp.min_eigenvalue) << ")\n";
    out << "interior              " << (r.interior ? "yes" : "no") << "\n";
    out << "lambda tilde          " << triple_text(r.form.lambda) << "\n";
    out << "|A||B|                " << format_number(r.pair.norm_product()) << "\n";
    out << "|A^-1||B^-1|          " << format_number(r.pair.inverse_norm_product()) << "\n";
    out << "C unital              " << format_number(r.bounds.unital_capacity) << "\n";
    out << "C lower (raw)         " << format_number(r.bounds.lower_raw) << "\n";
    out << "C upper (raw)         " << format_number(r.bounds.upper_raw) << "\n";
    out << "C lower               " << format_number(r.bounds.lower_clamped) << "\n";
    out << "C upper               " << format_number(r.bounds.upper_clamped) << "\n";
    if (r.chi) {
        out << "C chi                 " << format_number(r.chi->value) << (r.chi->converged ? "" : " (not converged)")
            << "\n";
    }
    out << "residuals             unital " << format_number(r.residual.unitality) << ", tp "
        << format_number(r.residual.trace_preservation) << ", reconstruction "
        << format_number(r.residual.reconstruction) << "\n";
    return out.str();
}

SinkhornReport sinkhorn_report(const ChannelSource &source, SinkhornMethod method, const SinkhornOptions &options) {
    SinkhornReport report;
    report.source = source;
    const QubitChannel channel = source.channel();
    require_cp(channel, source.describe());
    const double margin = family_margin(source);
    if (margin <= 0 || (source.general && !is_interior(channel))) {
        throw NotInterior(source.describe() + " is not an interior channel");
    }
    if (margin < 1e-2) {
        report.warnings.push_back("channel lies within " + format_number(margin) +
                                  " of the boundary; the scaling is ill-conditioned");
    }

    std::optional<QubitMap> closed_upsilon;
    std::optional<QubitMap> iterated_upsilon;
    if (method != SinkhornMethod::iterate) {
        if (source.general) {
            throw std::invalid_argument("the closed form needs a four-parameter family channel");
        }
        const auto params = source.family_params();
        SinkhornReport::Entry e{"closed-form", family_scaling_pair(params), family_unital_params(params), {}};
        e.residual = verify_decomposition(channel, e.pair);
        closed_upsilon = unitalized(channel, e.pair);
        report.entries.push_back(e);
    }
    if (method != SinkhornMethod::closed_form) {
        SinkhornReport::Entry e{"iterate", sinkhorn_iterate(channel, options), {}, {}};
        iterated_upsilon = unitalized(channel, e.pair);
        e.form = unital_diagonalize(*iterated_upsilon);
        if (!source.general) {
            // Report the signed diagonal in the input's axis order.
            const auto &t = iterated_upsilon->ptm();
            e.form.lambda = {t(1, 1), t(2, 2), t(3, 3)};
        }
        e.residual = verify_decomposition(channel, e.pair);
        if (e.pair.iterations > 1000) {
            report.warnings.push_back("fixed point needed " + std::to_string(e.pair.iterations) + " iterations");
        }
        report.entries.push_back(e);
    }
    if (closed_upsilon && iterated_upsilon) {
        double dev = (closed_upsilon->ptm() - iterated_upsilon->ptm()).cwiseAbs().maxCoeff();
        for (int k = 0; k < 3; ++k) {
            dev = std::max(dev, std::abs(report.entries[0].form.singular_values[k] -
                                         report.entries[1].form.singular_values[k]));
        }
        report.agreement = dev;
    }
    return report;
}

json to_json(const SinkhornReport &r) {
    json out;
    out["channel"] = r.source.describe();
    json entries = json::array();
    for (const auto &e : r.entries) {
        entries.push_back({{"method", e.method},
                           {"A", matrix_json(e.pair.a)},
                           {"B", matrix_json(e.pair.b)},
                           {"norm_A", number(e.pair.norm_a)},
                           {"norm_B", number(e.pair.norm_b)},
                           {"norm_Ainv", number(e.pair.norm_a_inv)},
                           {"norm_Binv", number(e.pair.norm_b_inv)},
                           {"norm_AB", number(e.pair.norm_product())},
                           {"norm_AinvBinv", number(e.pair.inverse_norm_product())},
                           {"lambda_tilde", triple_json(e.form.lambda)},
                           {"singular_values", triple_json(e.form.singular_values)},
                           {"iterations", e.pair.iterations},
                           {"residuals", residual_json(e.residual)}});
    }
    out["methods"] = entries;
    if (r.agreement) {
        out["agreement"] = number(*r.agreement);
    }
    out["warnings"] = r.warnings;
    return out;
}

std::string to_text(const SinkhornReport &r) {
    std::ostringstream out;
    out << "channel " << r.source.describe() << "\n";
    for (const auto &e : r.entries) {
        out << "[" << e.method << "]";
        if (e.pair.iterations > 0) {
            out << " " << e.pair.iterations << " iterations";
        }
        out << "\nA =\n" << matrix_text(e.pair.a) << "B =\n" << matrix_text(e.pair.b);
        out << "|A| " << format_number(e.pair.norm_a) << "  |B| " << format_number(e.pair.norm_b) << "  |A^-1| "
            << format_number(e.pair.norm_a_inv) << "  |B^-1| " << format_number(e.pair.norm_b_inv) << "\n";
        out << "|A||B| " << format_number(e.pair.norm_product()) << "  |A^-1||B^-1| "
            << format_number(e.pair.inverse_norm_product()) << "\n";
        out << "lambda tilde " << triple_text(e.form.lambda) << "\n";
        out << "residuals unital " << format_number(e.residual.unitality) << ", tp "
            << format_number(e.residual.trace_preservation) << ", reconstruction "
            << format_number(e.residual.reconstruction) << "\n";
    }
    if (r.agreement) {
        out << "agreement " << format_number(*r.agreement) << "\n";
    }
    return out.str();
}

void SweepConfig::validate() const {
    if (steps < 2) {
        throw std::invalid_argument("sweep needs at least 2 steps");
    }
    if (!(min < max)) {
        throw std::invalid_argument("sweep needs min < max");
    }
    auto inside = [&](double lo, double hi) {
        if (min < lo || max > hi) {
            throw std::invalid_argument("sweep range for '" + x + "' must lie in [" + format_number(lo) + ", " +
                                        format_number(hi) + "]");
        }
    };
    switch (family) {
        case Family::gad:
            if (x == "gamma_t") {
                inside(0, INFINITY);
            } else if (x == "p") {
                inside(0, 0.5);
            } else {
                throw std::invalid_argument("GAD sweeps vary gamma_t or p");
            }
            break;
        case Family::mix:
            if (x != "p") {
                throw std::invalid_argument("mixture sweeps vary p");
            }
            inside(0, 1);
            break;
        case Family::custom:
            if (x != "lambda1" && x != "lambda2" && x != "lambda3" && x != "t3") {
                throw std::invalid_argument("custom sweeps vary lambda1, lambda2, lambda3 or t3");
            }
            inside(-1, 1);
            break;
    }
}

PauliChannelParams SweepConfig::params_at(double v) const {
    switch (family) {
        case Family::gad:
            return x == "p" ? gad_params(v, gamma_t) : gad_params(p, v);
        case Family::mix:
            return mix_params(v);
        case Family::custom:
            break;
    }
    PauliChannelParams q = custom;
    if (x == "lambda1") {
        q.lambda1 = v;
    } else if (x == "lambda2") {
        q.lambda2 = v;
    } else if (x == "lambda3") {
        q.lambda3 = v;
    } else {
        q.t3 = v;
    }
    return q;
}

const std::vector<std::string> &sweep_columns() {
    static const std::vector<std::string> columns = {
        "x",       "lambda_t1",   "lambda_t2",   "lambda_t3", "norm_AB", "norm_AinvBinv",
        "c_unital", "c_lower_raw", "c_upper_raw", "c_lower",   "c_upper", "c_chi"};
    return columns;
}

SweepResult run_sweep(const SweepConfig &config) {
    config.validate();
    SweepResult result;
    struct Point {
        double x;
        PauliChannelParams params;
    };
    std::vector<Point> points;
    for (int k = 0; k < config.steps; ++k) {
        const double x = k + 1 == config.steps
                             ? config.max
                             : config.min + (config.max - config.min) * k / static_cast<double>(config.steps - 1);
        std::optional<PauliChannelParams> params;
        try {
            params = config.params_at(x);
        } catch (const NotInterior &) {
        }
        if (!params || !is_interior(*params)) {
            if (k == 0 || k + 1 == config.steps) {
                result.warnings.push_back("skipping boundary endpoint " + config.x + "=" + format_number(x));
                continue;
            }
            throw NotInterior("sweep point " + config.x + "=" + format_number(x) + " is not interior");
        }
        const CpReport cp = is_completely_positive(*params);
        if (!cp.completely_positive) {
            throw NotCompletelyPositive("sweep point " + config.x + "=" + format_number(x) +
                                        " is not completely positive");
        }
        points.push_back({x, *params});
    }

    std::vector<SweepRow> rows(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    ChiConfig chi_config = config.chi_config;
    chi_config.threads = 1;
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < points.size(); i += stride) {
            try {
                SweepRow row;
                row.x = points[i].x;
                row.lambda_tilde = family_unital_params(points[i].params).lambda;
                row.bounds = proposition_bounds(points[i].params);
                if (config.chi) {
                    row.chi = chi_capacity_numeric(ptm_from_params(points[i].params), chi_config).value;
                }
                rows[i] = row;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(points.size())));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w, workers);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    result.rows = std::move(rows);
    return result;
}

std::string sweep_csv(const SweepResult &r) {
    std::string out;
    const auto &columns = sweep_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += (i ? "," : "") + columns[i];
    }
    out += "\n";
    for (const auto &row : r.rows) {
        const auto &b = row.bounds;
        for (double v : {row.x, row.lambda_tilde[0], row.lambda_tilde[1], row.lambda_tilde[2], b.norm_product,
                         b.inverse_norm_product, b.unital_capacity, b.lower_raw, b.upper_raw, b.lower_clamped,
                         b.upper_clamped}) {
            out += format_number(v);
            out += ",";
        }
        if (row.chi) {
            out += format_number(*row.chi);
        }
        out += "\n";
    }
    return out;
}

json sweep_json(const SweepResult &r, const SweepConfig &config, bool timestamp) {
    json meta;
    meta["version"] = kVersion;
    meta["family"] = config.family == Family::gad ? "gad" : config.family == Family::mix ? "mix" : "custom";
    meta["x"] = config.x;
    meta["min"] = number(config.min);
    meta["max"] = number(config.max);
    meta["steps"] = config.steps;
    meta["seed"] = config.chi_config.seed;
    meta["chi"] = config.chi;
    if (config.family == Family::gad) {
        meta[config.x == "p" ? "gamma_t" : "p"] = number(config.x == "p" ? config.gamma_t : config.p);
    } else if (config.family == Family::custom) {
        meta["base"] = {{"lambda1", number(config.custom.lambda1)},
                        {"lambda2", number(config.custom.lambda2)},
                        {"lambda3", number(config.custom.lambda3)},
                        {"t3", number(config.custom.t3)}};
    }
    meta["tolerances"] = {{"psd", kPsdTolerance},
                          {"interior_margin", kInteriorMargin},
                          {"chi_step_tol", config.chi_config.step_tol},
                          {"chi_screen_step_tol", config.chi_config.screen_step_tol},
                          {"chi_starts_per_size", config.chi_config.starts_per_size}};
    meta["warnings"] = r.warnings;
    if (timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        meta["timestamp"] = buf;
    }

    json rows = json::array();
    for (const auto &row : r.rows) {
        const auto &b = row.bounds;
        rows.push_back({{"x", number(row.x)},
                        {"lambda_t1", number(row.lambda_tilde[0])},
                        {"lambda_t2", number(row.lambda_tilde[1])},
                        {"lambda_t3", number(row.lambda_tilde[2])},
                        {"norm_AB", number(b.norm_product)},
                        {"norm_AinvBinv", number(b.inverse_norm_product)},
                        {"c_unital", number(b.unital_capacity)},
                        {"c_lower_raw", number(b.lower_raw)},
                        {"c_upper_raw", number(b.upper_raw)},
                        {"c_lower", number(b.lower_clamped)},
                        {"c_upper", number(b.upper_clamped)},
                        {"c_chi", row.chi ? number(*row.chi) : json(nullptr)}});
    }
    return {{"meta", meta}, {"columns", sweep_columns()}, {"rows", rows}};
}

}  // namespace qcap

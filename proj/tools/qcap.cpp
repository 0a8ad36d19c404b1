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

// qcap: capacity bounds for qubit channels from their Sinkhorn normal form.
//
// Exit codes: 0 ok, 1 usage error / failed verification / other error,
// 2 channel not interior, 3 not completely positive, 4 no convergence.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qcap/analysis.hpp"
#include "qcap/errors.hpp"
#include "qcap/render.hpp"
#include "qcap/verify.hpp"

namespace {

using namespace qcap;

struct ChannelFlags {
    bool gad = false;
    bool mix = false;
    std::optional<double> p;
    std::optional<double> gamma_t;
    std::vector<double> lambda;
    std::optional<double> t3;
    std::vector<double> ptm;

    void add(CLI::App *cmd) {
        cmd->add_flag("--gad", gad, "generalized amplitude damping channel (needs --p, --gamma-t)");
        cmd->add_flag("--mix", mix, "mixture channel (needs --p)");
        cmd->add_option("--p", p, "family parameter p");
        cmd->add_option("--gamma-t", gamma_t, "GAD dimensionless time");
        cmd->add_option("--lambda", lambda, "diagonal Bloch contraction l1 l2 l3")->expected(3);
        cmd->add_option("--t3", t3, "translation along z for --lambda (default 0)");
        cmd->add_option("--ptm", ptm, "rows 1-3 of the Pauli transfer matrix, row-major (12 numbers)")
            ->expected(12);
    }

    ChannelSource source() const {
        const int chosen = int(gad) + int(mix) + int(!lambda.empty()) + int(!ptm.empty());
        if (chosen != 1) {
            throw CLI::ValidationError("channel", "choose exactly one of --gad, --mix, --lambda, --ptm");
        }
        if (gad) {
            if (!p || !gamma_t) {
                throw CLI::ValidationError("--gad", "needs --p and --gamma-t");
            }
            return ChannelSource::gad(*p, *gamma_t);
        }
        if (mix) {
            if (!p) {
                throw CLI::ValidationError("--mix", "needs --p");
            }
            return ChannelSource::mix(*p);
        }
        if (!lambda.empty()) {
            return ChannelSource::custom({lambda[0], lambda[1], lambda[2], t3.value_or(0)});
        }
        Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
        t(0, 0) = 1;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 4; ++c) {
                t(r + 1, c) = ptm[4 * r + c];
            }
        }
        return ChannelSource::from_ptm(QubitChannel(t));
    }
};

void emit(const std::string &text, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

std::string json_text(const nlohmann::json &j) {
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Capacity bounds for qubit channels via Sinkhorn scaling"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // analyze
    ChannelFlags analyze_channel;
    bool analyze_chi = false;
    std::optional<std::uint64_t> analyze_seed;
    std::string analyze_format = "text";
    std::string analyze_out;
    auto *analyze = app.add_subcommand("analyze", "report bounds and diagnostics for one channel");
    analyze_channel.add(analyze);
    analyze->add_flag("--chi", analyze_chi, "also compute the Holevo capacity numerically");
    analyze->add_option("--seed", analyze_seed, "optimizer seed (default QCAP_SEED or 42)");
    analyze->add_option("--format", analyze_format)->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--out", analyze_out, "output file (default stdout)");

    // sweep
    bool sweep_gad = false;
    bool sweep_mix = false;
    bool sweep_custom = false;
    SweepConfig sweep_config;
    std::optional<double> sweep_p;
    std::optional<double> sweep_gt;
    std::vector<double> sweep_lambda;
    std::optional<double> sweep_t3;
    std::optional<std::string> sweep_x;
    std::optional<double> sweep_min;
    std::optional<double> sweep_max;
    std::optional<std::uint64_t> sweep_seed;
    std::string sweep_format = "csv";
    std::string sweep_out;
    bool sweep_no_timestamp = false;
    auto *sweep = app.add_subcommand("sweep", "tabulate bounds along a one-parameter family");
    sweep->add_flag("--gad", sweep_gad, "generalized amplitude damping family");
    sweep->add_flag("--mix", sweep_mix, "mixture family");
    sweep->add_flag("--custom", sweep_custom, "diagonal family with base point --lambda, --t3");
    sweep->add_option("--p", sweep_p, "fixed GAD p when sweeping gamma_t (default 0.475)");
    sweep->add_option("--gamma-t", sweep_gt, "fixed GAD gamma_t when sweeping p (default 1)");
    sweep->add_option("--lambda", sweep_lambda, "custom base point l1 l2 l3")->expected(3);
    sweep->add_option("--t3", sweep_t3, "custom base translation");
    sweep->add_option("--x", sweep_x, "swept variable: gamma_t | p | lambda1 | lambda2 | lambda3 | t3");
    sweep->add_option("--min", sweep_min, "first grid value");
    sweep->add_option("--max", sweep_max, "last grid value");
    sweep->add_option("--steps", sweep_config.steps, "grid points (>= 2)");
    sweep->add_flag("--chi", sweep_config.chi, "fill the c_chi column");
    sweep->add_option("--seed", sweep_seed, "optimizer seed (default QCAP_SEED or 42)");
    sweep->add_option("--workers", sweep_config.workers, "worker threads (default: hardware concurrency)");
    sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sweep_out, "output file (default stdout)");
    sweep->add_flag("--no-timestamp", sweep_no_timestamp, "omit the timestamp from JSON meta");
    sweep_config.workers = std::max(1u, std::thread::hardware_concurrency());

    // sinkhorn
    ChannelFlags sinkhorn_channel;
    std::string sinkhorn_method = "both";
    SinkhornOptions sinkhorn_options;
    std::string sinkhorn_format = "text";
    std::string sinkhorn_out;
    auto *sinkhorn = app.add_subcommand("sinkhorn", "compute the scaling pair A, B");
    sinkhorn_channel.add(sinkhorn);
    sinkhorn->add_option("--method", sinkhorn_method)->check(CLI::IsMember({"closed-form", "iterate", "both"}));
    sinkhorn->add_option("--tol", sinkhorn_options.tol, "fixed-point tolerance");
    sinkhorn->add_option("--max-iter", sinkhorn_options.max_iter, "iteration cap");
    sinkhorn->add_option("--format", sinkhorn_format)->check(CLI::IsMember({"text", "json"}));
    sinkhorn->add_option("--out", sinkhorn_out, "output file (default stdout)");

    // verify
    std::string verify_suite = "all";
    std::optional<std::uint64_t> verify_seed;
    bool verify_fault = false;
    std::string verify_format = "json";
    auto *verify = app.add_subcommand("verify", "run the randomized invariant suites");
    verify->add_option("--suite", verify_suite)
        ->check(CLI::IsMember({"core", "sinkhorn", "capacity", "protocol", "all"}));
    verify->add_option("--seed", verify_seed, "seed (default QCAP_SEED or 42)");
    verify->add_flag("--inject-fault", verify_fault, "perturb the scaling operators; the run must fail");
    verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));

    // render
    std::optional<std::string> render_preset;
    ChartSpec render_spec;
    std::vector<std::string> render_series;
    std::optional<std::string> render_x;
    std::optional<std::string> render_xlabel;
    std::optional<std::string> render_ylabel;
    std::optional<std::string> render_title;
    std::optional<double> render_ymin;
    std::optional<double> render_ymax;
    auto *render = app.add_subcommand("render", "draw an SVG chart from sweep CSV");
    render->add_option("--preset", render_preset)->check(CLI::IsMember({"fig1", "fig2"}));
    render->add_option("--in", render_spec.input, "sweep CSV")->required();
    render->add_option("--out", render_spec.output, "SVG file")->required();
    render->add_option("--x", render_x, "x column (default x)");
    render->add_option("--series", render_series, "column:style[:label], style solid|dotted|dashed");
    render->add_option("--xlabel", render_xlabel);
    render->add_option("--ylabel", render_ylabel);
    render->add_option("--title", render_title);
    render->add_option("--ymin", render_ymin);
    render->add_option("--ymax", render_ymax);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*analyze) {
            ChiConfig chi;
            chi.seed = analyze_seed.value_or(default_seed());
            chi.threads = std::max(1u, std::thread::hardware_concurrency());
            const AnalysisReport r = qcap::analyze(analyze_channel.source(), analyze_chi, chi);
            emit(analyze_format == "json" ? json_text(to_json(r)) : to_text(r), analyze_out);
        } else if (*sweep) {
            if (int(sweep_gad) + int(sweep_mix) + int(sweep_custom) != 1) {
                throw CLI::ValidationError("sweep", "choose exactly one of --gad, --mix, --custom");
            }
            if (sweep_gad) {
                sweep_config.family = Family::gad;
                sweep_config.x = sweep_x.value_or("gamma_t");
                sweep_config.p = sweep_p.value_or(0.475);
                sweep_config.gamma_t = sweep_gt.value_or(1.0);
                const bool over_p = sweep_config.x == "p";
                sweep_config.min = sweep_min.value_or(over_p ? 0.05 : 0.05);
                sweep_config.max = sweep_max.value_or(over_p ? 0.5 : 3.0);
            } else if (sweep_mix) {
                sweep_config.family = Family::mix;
                sweep_config.x = sweep_x.value_or("p");
                sweep_config.min = sweep_min.value_or(0.02);
                sweep_config.max = sweep_max.value_or(0.98);
            } else {
                if (sweep_lambda.empty() || !sweep_x || !sweep_min || !sweep_max) {
                    throw CLI::ValidationError("--custom", "needs --lambda, --x, --min and --max");
                }
                sweep_config.family = Family::custom;
                sweep_config.custom = {sweep_lambda[0], sweep_lambda[1], sweep_lambda[2], sweep_t3.value_or(0)};
                sweep_config.x = *sweep_x;
                sweep_config.min = *sweep_min;
                sweep_config.max = *sweep_max;
            }
            sweep_config.chi_config.seed = sweep_seed.value_or(default_seed());
            const SweepResult r = run_sweep(sweep_config);
            for (const auto &w : r.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            emit(sweep_format == "json" ? json_text(sweep_json(r, sweep_config, !sweep_no_timestamp)) : sweep_csv(r),
                 sweep_out);
        } else if (*sinkhorn) {
            const SinkhornMethod method = sinkhorn_method == "closed-form" ? SinkhornMethod::closed_form
                                          : sinkhorn_method == "iterate"   ? SinkhornMethod::iterate
                                                                           : SinkhornMethod::both;
            ChannelSource source = sinkhorn_channel.source();
            SinkhornMethod effective = method;
            if (source.general && method == SinkhornMethod::both) {
                effective = SinkhornMethod::iterate;
            }
            const SinkhornReport r = sinkhorn_report(source, effective, sinkhorn_options);
            for (const auto &w : r.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            emit(sinkhorn_format == "json" ? json_text(to_json(r)) : to_text(r), sinkhorn_out);
        } else if (*verify) {
            const VerificationReport r = run_verification(verify_suite, verify_seed.value_or(default_seed()), verify_fault);
            std::cout << (verify_format == "json" ? json_text(r.to_json()) : r.to_text());
            if (!r.passed()) {
                std::cerr << "verification failed\n";
                return 1;
            }
        } else if (*render) {
            ChartSpec spec = render_preset ? preset(*render_preset) : ChartSpec{};
            spec.input = render_spec.input;
            spec.output = render_spec.output;
            if (render_x) {
                spec.x_column = *render_x;
            }
            if (!render_series.empty()) {
                spec.series.clear();
                for (const auto &s : render_series) {
                    const auto first = s.find(':');
                    if (first == std::string::npos) {
                        throw RenderError("series '" + s + "' must be column:style[:label]");
                    }
                    const auto second = s.find(':', first + 1);
                    SeriesSpec series;
                    series.column = s.substr(0, first);
                    series.style = parse_line_style(s.substr(first + 1, second == std::string::npos
                                                                             ? std::string::npos
                                                                             : second - first - 1));
                    series.label = second == std::string::npos ? series.column : s.substr(second + 1);
                    spec.series.push_back(series);
                }
            }
            if (spec.series.empty()) {
                throw RenderError("no series: pass --preset or --series");
            }
            if (render_xlabel) {
                spec.x_label = *render_xlabel;
            }
            if (render_ylabel) {
                spec.y_label = *render_ylabel;
            }
            if (render_title) {
                spec.title = *render_title;
            }
            spec.y_min = render_ymin.value_or(spec.y_min);
            spec.y_max = render_ymax.value_or(spec.y_max);
            render_chart(spec);
        }
    } catch (const CLI::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotInterior &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotCompletelyPositive &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoConvergence &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

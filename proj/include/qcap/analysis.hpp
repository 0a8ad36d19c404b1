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

#ifndef QCAP_ANALYSIS_HPP
#define QCAP_ANALYSIS_HPP

// Report builders behind the command-line front end: single-channel analysis,
// Sinkhorn reports, and parameter sweeps with CSV/JSON serialization.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcap/capacity.hpp"
#include "qcap/core.hpp"
#include "qcap/sinkhorn.hpp"

namespace qcap {

inline constexpr const char *kVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Seed from QCAP_SEED if set and numeric, else kDefaultSeed.
std::uint64_t default_seed();

enum class Family { gad, mix, custom };

/// A channel named either by a family point or by an explicit PTM.
struct ChannelSource {
    Family family = Family::custom;
    double p = 0;
    double gamma_t = 0;
    PauliChannelParams params;
    /// Set for a general channel given by its affine form; `params` is unused then.
    std::optional<QubitChannel> general;

    static ChannelSource gad(double p, double gamma_t);
    static ChannelSource mix(double p);
    static ChannelSource custom(const PauliChannelParams &params);
    static ChannelSource from_ptm(const QubitChannel &c);

    /// Throws NotInterior for boundary family points (GAD p <= 0, mixture p in {0, 1}).
    PauliChannelParams family_params() const;
    QubitChannel channel() const;
    std::string describe() const;
};

struct AnalysisReport {
    ChannelSource source;
    std::optional<PauliChannelParams> params;
    Eigen::Matrix4d ptm;
    CpReport cp;
    bool interior = false;
    UnitalForm form;
    ScalingPair pair;
    CapacityBounds bounds;
    DecompositionResidual residual;
    std::optional<ChiResult> chi;
};

/// Throws NotCompletelyPositive, then NotInterior, in that order of checks.
AnalysisReport analyze(const ChannelSource &source, bool with_chi, const ChiConfig &chi = {});
nlohmann::json to_json(const AnalysisReport &r);
std::string to_text(const AnalysisReport &r);

enum class SinkhornMethod { closed_form, iterate, both };

struct SinkhornReport {
    struct Entry {
        std::string method;
        ScalingPair pair;
        UnitalForm form;
        DecompositionResidual residual;
    };
    ChannelSource source;
    std::vector<Entry> entries;
    /// Max deviation of the diagonal unital parameters between the two methods.
    std::optional<double> agreement;
    std::vector<std::string> warnings;
};

/// Throws NotCompletelyPositive, NotInterior, NoConvergence.
SinkhornReport sinkhorn_report(const ChannelSource &source, SinkhornMethod method, const SinkhornOptions &options = {});
nlohmann::json to_json(const SinkhornReport &r);
std::string to_text(const SinkhornReport &r);

enum class OutputFormat { csv, json };

struct SweepConfig {
    Family family = Family::gad;
    /// Fixed GAD population when sweeping gamma_t.
    double p = 0.475;
    /// Fixed GAD time when sweeping p.
    double gamma_t = 1.0;
    /// Base point for custom sweeps.
    PauliChannelParams custom;
    /// gamma_t | p | lambda1 | lambda2 | lambda3 | t3, depending on the family.
    std::string x = "gamma_t";
    double min = 0.05;
    double max = 3;
    int steps = 60;
    bool chi = false;
    ChiConfig chi_config;
    unsigned workers = 1;

    /// Throws std::invalid_argument for steps < 2, min >= max, an unknown
    /// variable, or a range outside the family's admissible domain.
    void validate() const;
    PauliChannelParams params_at(double x_value) const;
};

struct SweepRow {
    double x = 0;
    std::array<double, 3> lambda_tilde{};
    CapacityBounds bounds;
    std::optional<double> chi;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;
};

/// CSV header, in order.
const std::vector<std::string> &sweep_columns();

/// Exact-boundary endpoints are dropped with a warning; any other
/// non-interior point throws NotInterior, a non-CP point NotCompletelyPositive.
SweepResult run_sweep(const SweepConfig &config);
std::string sweep_csv(const SweepResult &r);
/// Rows keyed by the CSV column names plus a `meta` object. `timestamp` in
/// meta is the only nondeterministic field and is omitted when false.
nlohmann::json sweep_json(const SweepResult &r, const SweepConfig &config, bool timestamp = true);

}  // namespace qcap

#endif

// SPDX-License-Identifier: Apache-2.0
//
// cfmimo: uplink cell-free massive MIMO simulation and max-min SINR solver
// Copyright (C) 2026 The cfmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <span>
#include <string>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/maxmin.hpp"
#include "cfmimo/pilots.hpp"
#include "cfmimo/topology.hpp"

namespace cfmimo {

struct CdfPoint {
    double rate = 0.0;
    double probability = 0.0;
};

/// Empirical CDF: probability i/N at the i-th smallest value. Ties collapse to
/// one step at the largest probability. Throws ParameterError on empty input.
std::vector<CdfPoint> cdf(std::span<const double> values);

/// Smallest value whose CDF probability reaches p.
double cdf_quantile(const std::vector<CdfPoint>& table, double p);

struct CurveSummary {
    double median = 0.0;
    double outage5 = 0.0;
    double mean_rate = 0.0;
    double mean_min_rate = 0.0;
    int samples = 0;
    int flagged = 0;
    double mean_iterations = 0.0;
    int max_iterations = 0;
    int cap_hits = 0;
};

/// Results of one (scheme, pilot setting) pair over all realizations.
struct Curve {
    Scheme scheme = Scheme::proposed;
    PilotSetting pilots;
    std::vector<std::vector<double>> rates; ///< [realization][user]
    std::vector<double> min_rates;          ///< per realization
    std::vector<char> flagged;              ///< solver did not converge
    std::vector<IterationTrace> traces;     ///< proposed scheme only, when tracing
    std::vector<CdfPoint> table;            ///< CDF over unflagged per-user rates
    CurveSummary summary;

    std::string label() const;
};

struct ExperimentResult {
    int realizations = 0;
    std::vector<Curve> curves;
    bool failed = false;
    std::string failure;

    const Curve* find(Scheme scheme, const std::string& pilot_label) const;
};

/// Inputs of a single network realization, reproducible from (config, index).
struct RealizationInputs {
    Topology topology;
    std::vector<PilotBook> pilots; ///< one per config.pilots entry
};

RealizationInputs realization_inputs(const ExperimentConfig& config, int index);
std::string realization_snapshot_json(const RealizationInputs& inputs, int index);

/// Fraction of flagged (non-converged) realizations above which a run fails.
inline constexpr double kMaxFlaggedFraction = 0.01;

/// Runs every realization (in parallel when threads != 1) and aggregates the
/// per-curve CDFs. Deterministic in the master seed regardless of threading.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string summary_json(const ExperimentResult& result, const ExperimentConfig& config);

/// Writes rates_*.csv, cdf_*.csv, summary.json, optional trace_*.csv and
/// realization snapshots into config.out_dir.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& config);

} // namespace cfmimo

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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cfmimo/maxmin.hpp"
#include "cfmimo/params.hpp"

namespace cfmimo {

enum class Scheme { proposed, baseline, both };

const char* to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

/// One pilot configuration of an experiment. Orthogonal settings always use
/// tau = K.
struct PilotSetting {
    PilotMode mode = PilotMode::random;
    int tau = 10;

    int effective_tau(int num_users) const { return mode == PilotMode::orthogonal ? num_users : tau; }
    /// "orthogonal" or "tau<N>"; used in output file names.
    std::string label() const;
};

/// Parses "orthogonal", "orth", or a positive integer (random pilots of that length).
PilotSetting parse_pilot_setting(const std::string& token);

struct ExperimentConfig {
    SimParams params = SimParams::with_defaults();
    LinkBudget link;
    int realizations = 300;
    Scheme scheme = Scheme::both;
    std::vector<PilotSetting> pilots{{PilotMode::random, 10}};
    std::string out_dir = "out";
    /// 0 selects std::thread::hardware_concurrency().
    int threads = 0;
    SolverOptions solver;
    bool trace = false;
    /// Number of leading realizations whose topology/pilots are written as JSON.
    int snapshots = 1;
    long oracle_draws = 100000;

    /// Re-derives rho and p_p from the link budget unless set explicitly.
    bool rho_override = false;
    bool pilot_snr_override = false;

    void validate() const;
};

/// Applies one key/value pair; keys mirror ExperimentConfig and SimParams.
/// Throws ConfigurationError for unknown keys or malformed values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Flat "key = value" lines; '#' starts a comment.
void load_config(ExperimentConfig& config, std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

/// Recomputes the normalized SNRs from the link budget (respecting overrides).
void finalize_config(ExperimentConfig& config);

std::string to_config_text(const ExperimentConfig& config);

} // namespace cfmimo

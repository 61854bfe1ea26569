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
#include <random>
#include <string>

namespace cfmimo {

using Rng = std::mt19937_64;

inline constexpr double kBoltzmann = 1.381e-23;

enum class PilotMode { orthogonal, random };

const char* to_string(PilotMode mode);
PilotMode parse_pilot_mode(const std::string& text);

/// Constants of the three-slope path-loss model (Hata-COST231 beyond d1,
/// 20 dB/decade between d0 and d1, flat below d0).
struct PathLossModel {
    double carrier_mhz = 1900.0;
    double ap_height_m = 15.0;
    double user_height_m = 1.65;
    double d0_m = 10.0;
    double d1_m = 50.0;
};

/// Receiver noise and transmit powers in physical units; only used to derive
/// the normalized SNRs stored in SimParams.
struct LinkBudget {
    double bandwidth_hz = 20e6;
    double noise_figure_db = 9.0;
    double temperature_k = 290.0;
    double pilot_power_w = 0.1;
    double data_power_w = 0.1;
};

/// Thermal noise power BW * k_B * T0 * 10^(NF/10) in watts.
double noise_power(double bandwidth_hz, double noise_figure_db, double temperature_k);

struct SimParams {
    int num_aps = 60;
    int num_users = 20;
    double side_km = 1.0;
    int pilot_length = 10;
    PilotMode pilot_mode = PilotMode::random;
    double shadow_std_db = 8.0;
    /// Normalized uplink data SNR (linear).
    double rho = 0.0;
    /// Normalized pilot SNR (linear).
    double pilot_snr = 0.0;
    /// Per-user normalized power limit; q_k in [0, p_max].
    double p_max = 1.0;
    PathLossModel path_loss;
    std::uint64_t seed = 1;

    /// Defaults with rho and pilot_snr derived from the default LinkBudget.
    static SimParams with_defaults();

    /// Recomputes rho and pilot_snr as transmit power over noise power.
    void apply_link_budget(const LinkBudget& budget);

    double side_m() const { return side_km * 1000.0; }

    /// Throws ParameterError / ConfigurationError on violated invariants.
    void validate() const;
};

} // namespace cfmimo

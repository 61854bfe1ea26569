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

#include "cfmimo/params.hpp"

#include <cmath>

#include "cfmimo/errors.hpp"

namespace cfmimo {

const char* to_string(PilotMode mode)
{
    return mode == PilotMode::orthogonal ? "orthogonal" : "random";
}

PilotMode parse_pilot_mode(const std::string& text)
{
    if (text == "orthogonal" || text == "orth")
        return PilotMode::orthogonal;
    if (text == "random")
        return PilotMode::random;
    throw ConfigurationError("unknown pilot mode '" + text + "'");
}

double noise_power(double bandwidth_hz, double noise_figure_db, double temperature_k)
{
    if (!(bandwidth_hz > 0.0) || !(noise_figure_db >= 0.0) || !(temperature_k > 0.0))
        throw ParameterError("noise_power: bandwidth and temperature must be positive, noise figure non-negative");
    return bandwidth_hz * kBoltzmann * temperature_k * std::pow(10.0, noise_figure_db / 10.0);
}

SimParams SimParams::with_defaults()
{
    SimParams p;
    p.apply_link_budget(LinkBudget{});
    return p;
}

void SimParams::apply_link_budget(const LinkBudget& budget)
{
    if (!(budget.pilot_power_w > 0.0) || !(budget.data_power_w > 0.0))
        throw ParameterError("transmit powers must be positive");
    const double pn = noise_power(budget.bandwidth_hz, budget.noise_figure_db, budget.temperature_k);
    pilot_snr = budget.pilot_power_w / pn;
    rho = budget.data_power_w / pn;
}

void SimParams::validate() const
{
    if (num_aps < 1)
        throw ConfigurationError("M must be at least 1");
    if (num_users < 1)
        throw ConfigurationError("K must be at least 1");
    if (pilot_length < 1)
        throw ConfigurationError("tau must be at least 1");
    if (pilot_mode == PilotMode::orthogonal && pilot_length < num_users)
        throw ConfigurationError("orthogonal pilots require tau >= K");
    if (pilot_mode == PilotMode::random && pilot_length > num_users)
        throw ConfigurationError("random pilot assignment requires tau <= K");
    if (!(side_km > 0.0))
        throw ParameterError("D must be positive");
    if (!(rho > 0.0) || !(pilot_snr > 0.0) || !(p_max > 0.0))
        throw ParameterError("rho, p_p and p_max must be positive");
    if (!(shadow_std_db >= 0.0))
        throw ParameterError("shadowing standard deviation must be non-negative");
    if (!(path_loss.d0_m > 0.0) || !(path_loss.d0_m < path_loss.d1_m))
        throw ParameterError("path-loss breakpoints must satisfy 0 < d0 < d1");
    if (!(path_loss.carrier_mhz > 0.0) || !(path_loss.ap_height_m > 0.0) || !(path_loss.user_height_m > 0.0))
        throw ParameterError("carrier frequency and antenna heights must be positive");
}

} // namespace cfmimo

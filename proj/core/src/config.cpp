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

#include "cfmimo/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "cfmimo/errors.hpp"

namespace cfmimo {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value)
{
    T out{};
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigurationError("config key '" + key + "': cannot parse '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "yes" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "no" || value == "off")
        return false;
    throw ConfigurationError("config key '" + key + "': expected a boolean, got '" + value + "'");
}

} // namespace

const char* to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::proposed: return "proposed";
    case Scheme::baseline: return "baseline";
    case Scheme::both: return "both";
    }
    return "both";
}

Scheme parse_scheme(const std::string& text)
{
    if (text == "proposed")
        return Scheme::proposed;
    if (text == "baseline")
        return Scheme::baseline;
    if (text == "both")
        return Scheme::both;
    throw ConfigurationError("unknown scheme '" + text + "'");
}

std::string PilotSetting::label() const
{
    return mode == PilotMode::orthogonal ? std::string("orthogonal") : "tau" + std::to_string(tau);
}

PilotSetting parse_pilot_setting(const std::string& token)
{
    if (token == "orthogonal" || token == "orth")
        return {PilotMode::orthogonal, 0};
    const int tau = parse_number<int>("pilots", token);
    if (tau < 1)
        throw ConfigurationError("pilot length must be positive");
    return {PilotMode::random, tau};
}

void ExperimentConfig::validate() const
{
    if (realizations < 1)
        throw ConfigurationError("realizations must be at least 1");
    if (pilots.empty())
        throw ConfigurationError("at least one pilot setting is required");
    if (threads < 0)
        throw ConfigurationError("threads must be non-negative");
    if (oracle_draws < 1)
        throw ConfigurationError("oracle_draws must be positive");
    for (const auto& p : pilots) {
        SimParams sp = params;
        sp.pilot_mode = p.mode;
        sp.pilot_length = p.effective_tau(params.num_users);
        sp.validate();
    }
    if (solver.max_iters < 1 || !(solver.eps_converge > 0.0) || !(solver.power.tol > 0.0))
        throw ParameterError("solver tolerances and iteration limits must be positive");
}

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& raw)
{
    const std::string value = trim(raw);
    auto& p = config.params;
    auto dbl = [&] { return parse_number<double>(key, value); };
    auto integer = [&] { return parse_number<int>(key, value); };

    if (key == "M")
        p.num_aps = integer();
    else if (key == "K")
        p.num_users = integer();
    else if (key == "D")
        p.side_km = dbl();
    else if (key == "tau") {
        p.pilot_length = integer();
        config.pilots = {{p.pilot_mode, p.pilot_length}};
    } else if (key == "pilot_mode") {
        p.pilot_mode = parse_pilot_mode(value);
        config.pilots = {{p.pilot_mode, p.pilot_length}};
    } else if (key == "pilots") {
        config.pilots.clear();
        for (const auto& tok : split_list(value))
            config.pilots.push_back(parse_pilot_setting(tok));
    } else if (key == "sigma_sh")
        p.shadow_std_db = dbl();
    else if (key == "p_max")
        p.p_max = dbl();
    else if (key == "rho") {
        p.rho = dbl();
        config.rho_override = true;
    } else if (key == "p_p") {
        p.pilot_snr = dbl();
        config.pilot_snr_override = true;
    } else if (key == "carrier_mhz")
        p.path_loss.carrier_mhz = dbl();
    else if (key == "ap_height_m")
        p.path_loss.ap_height_m = dbl();
    else if (key == "user_height_m")
        p.path_loss.user_height_m = dbl();
    else if (key == "d0_m")
        p.path_loss.d0_m = dbl();
    else if (key == "d1_m")
        p.path_loss.d1_m = dbl();
    else if (key == "bandwidth_hz")
        config.link.bandwidth_hz = dbl();
    else if (key == "noise_figure_db")
        config.link.noise_figure_db = dbl();
    else if (key == "temperature_k")
        config.link.temperature_k = dbl();
    else if (key == "pilot_power_w")
        config.link.pilot_power_w = dbl();
    else if (key == "data_power_w")
        config.link.data_power_w = dbl();
    else if (key == "seed")
        p.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "realizations")
        config.realizations = integer();
    else if (key == "scheme")
        config.scheme = parse_scheme(value);
    else if (key == "out")
        config.out_dir = value;
    else if (key == "threads")
        config.threads = integer();
    else if (key == "max_iters")
        config.solver.max_iters = integer();
    else if (key == "eps_converge")
        config.solver.eps_converge = dbl();
    else if (key == "bisection_tol")
        config.solver.power.tol = dbl();
    else if (key == "fixed_point_tol")
        config.solver.power.fixed_point.tol = dbl();
    else if (key == "fixed_point_max_iters")
        config.solver.power.fixed_point.max_iters = integer();
    else if (key == "init") {
        if (value == "full_power")
            config.solver.init = PowerInit::full_power;
        else if (value == "baseline")
            config.solver.init = PowerInit::baseline;
        else
            throw ConfigurationError("init must be full_power or baseline");
    } else if (key == "trace")
        config.trace = parse_bool(key, value);
    else if (key == "snapshots")
        config.snapshots = integer();
    else if (key == "oracle_draws")
        config.oracle_draws = parse_number<long>(key, value);
    else
        throw ConfigurationError("unknown config key '" + key + "'");
}

void load_config(ExperimentConfig& config, std::istream& in)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigurationError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

ExperimentConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError("cannot open config file '" + path + "'");
    ExperimentConfig config;
    load_config(config, in);
    finalize_config(config);
    return config;
}

void finalize_config(ExperimentConfig& config)
{
    const double rho = config.params.rho;
    const double pp = config.params.pilot_snr;
    config.params.apply_link_budget(config.link);
    if (config.rho_override)
        config.params.rho = rho;
    if (config.pilot_snr_override)
        config.params.pilot_snr = pp;
}

std::string to_config_text(const ExperimentConfig& config)
{
    const auto& p = config.params;
    // Shortest text that round-trips.
    const auto num = [](double v) {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    };
    std::ostringstream os;
    os << "M = " << p.num_aps << '\n'
       << "K = " << p.num_users << '\n'
       << "D = " << num(p.side_km) << '\n';
    os << "pilots = ";
    for (std::size_t i = 0; i < config.pilots.size(); ++i) {
        const auto& s = config.pilots[i];
        os << (i ? "," : "") << (s.mode == PilotMode::orthogonal ? std::string("orthogonal") : std::to_string(s.tau));
    }
    os << '\n'
       << "sigma_sh = " << num(p.shadow_std_db) << '\n'
       << "p_max = " << num(p.p_max) << '\n';
    if (config.rho_override)
        os << "rho = " << num(p.rho) << '\n';
    if (config.pilot_snr_override)
        os << "p_p = " << num(p.pilot_snr) << '\n';
    os << "carrier_mhz = " << num(p.path_loss.carrier_mhz) << '\n'
       << "ap_height_m = " << num(p.path_loss.ap_height_m) << '\n'
       << "user_height_m = " << num(p.path_loss.user_height_m) << '\n'
       << "d0_m = " << num(p.path_loss.d0_m) << '\n'
       << "d1_m = " << num(p.path_loss.d1_m) << '\n'
       << "bandwidth_hz = " << num(config.link.bandwidth_hz) << '\n'
       << "noise_figure_db = " << num(config.link.noise_figure_db) << '\n'
       << "temperature_k = " << num(config.link.temperature_k) << '\n'
       << "pilot_power_w = " << num(config.link.pilot_power_w) << '\n'
       << "data_power_w = " << num(config.link.data_power_w) << '\n'
       << "seed = " << p.seed << '\n'
       << "realizations = " << config.realizations << '\n'
       << "scheme = " << to_string(config.scheme) << '\n'
       << "out = " << config.out_dir << '\n'
       << "threads = " << config.threads << '\n'
       << "max_iters = " << config.solver.max_iters << '\n'
       << "eps_converge = " << num(config.solver.eps_converge) << '\n'
       << "bisection_tol = " << num(config.solver.power.tol) << '\n'
       << "fixed_point_tol = " << num(config.solver.power.fixed_point.tol) << '\n'
       << "fixed_point_max_iters = " << config.solver.power.fixed_point.max_iters << '\n'
       << "init = " << (config.solver.init == PowerInit::baseline ? "baseline" : "full_power") << '\n'
       << "trace = " << (config.trace ? "true" : "false") << '\n'
       << "snapshots = " << config.snapshots << '\n'
       << "oracle_draws = " << config.oracle_draws << '\n';
    return os.str();
}

} // namespace cfmimo

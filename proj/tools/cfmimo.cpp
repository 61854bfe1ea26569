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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cfmimo/chanstats.hpp"
#include "cfmimo/config.hpp"
#include "cfmimo/errors.hpp"
#include "cfmimo/harness.hpp"
#include "cfmimo/maxmin.hpp"
#include "cfmimo/oracle.hpp"

namespace {

// Oracle acceptance thresholds (relative).
constexpr double kTermTolerance = 0.03;
constexpr double kSinrTolerance = 0.02;

int run_oracle_suite(const cfmimo::ExperimentConfig& config)
{
    using namespace cfmimo;
    const auto& setting = config.pilots.front();
    SimParams sp = config.params;
    sp.pilot_mode = setting.mode;
    sp.pilot_length = setting.effective_tau(sp.num_users);

    const auto inputs = realization_inputs(config, 0);
    const ChannelStats stats(inputs.topology.beta, inputs.pilots.front().gram2(), sp.pilot_length, sp.pilot_snr);
    const auto p1 = solve_p1(stats, sp, config.solver);

    std::seed_seq seq{static_cast<std::uint32_t>(sp.seed), static_cast<std::uint32_t>(sp.seed >> 32), 0x0AC1Eu};
    Rng rng(seq);
    const auto report = run_oracle(stats, inputs.pilots.front(), p1.solution.U, p1.solution.q, sp.rho,
                                   config.oracle_draws, rng);

    std::printf("oracle: M=%d K=%d pilots=%s draws=%ld%s\n", sp.num_aps, sp.num_users, setting.label().c_str(),
                report.draws, report.low_confidence ? " (low confidence)" : "");
    std::printf("%4s %10s %10s %10s %10s %10s\n", "user", "|DS|^2", "E|BU|^2", "E|IUI|^2", "E|TN|^2", "SINR");
    for (const auto& u : report.users) {
        std::printf("%4d %9.3f%% %9.3f%% %9.3f%% %9.3f%% %9.3f%%\n", u.user, 100 * u.ds2.relative_error(),
                    100 * u.bu.relative_error(), 100 * u.iui.relative_error(), 100 * u.tn.relative_error(),
                    100 * u.sinr.relative_error());
    }
    const bool ok = report.max_term_error() <= kTermTolerance && report.max_sinr_error() <= kSinrTolerance;
    std::printf("max term error %.3f%%, max SINR error %.3f%%: %s\n", 100 * report.max_term_error(),
                100 * report.max_sinr_error(), ok ? "PASS" : "FAIL");

    std::filesystem::create_directories(config.out_dir);
    std::ofstream(std::filesystem::path(config.out_dir) / "oracle_report.json") << report.to_json() << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Uplink cell-free massive MIMO max-min SINR experiments"};

    std::string config_path;
    std::optional<int> M, K, tau, realizations, threads;
    std::optional<double> D;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> pilot_mode, scheme, out;
    bool oracle = false;
    bool trace = false;
    bool print_config = false;

    app.add_option("--config", config_path, "Flat key = value config file")->check(CLI::ExistingFile);
    app.add_option("--M", M, "Number of APs");
    app.add_option("--K", K, "Number of users");
    app.add_option("--tau", tau, "Pilot length");
    app.add_option("--D", D, "Side of the square area in km");
    app.add_option("--realizations", realizations, "Number of network realizations");
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--pilot-mode", pilot_mode, "Pilot assignment")->check(CLI::IsMember({"orthogonal", "random"}));
    app.add_option("--scheme", scheme, "Schemes to run")->check(CLI::IsMember({"proposed", "baseline", "both"}));
    app.add_option("--out", out, "Output directory");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_flag("--oracle", oracle, "Run the Monte Carlo verification of the closed-form SINR");
    app.add_flag("--trace", trace, "Write per-iteration min-rate traces");
    app.add_flag("--print-config", print_config, "Print the effective configuration and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        cfmimo::ExperimentConfig config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            cfmimo::load_config(config, in);
        }
        auto set = [&](const char* key, const std::string& value) { cfmimo::apply_setting(config, key, value); };
        if (M) set("M", std::to_string(*M));
        if (K) set("K", std::to_string(*K));
        if (D) set("D", std::to_string(*D));
        if (pilot_mode) set("pilot_mode", *pilot_mode);
        if (tau) set("tau", std::to_string(*tau));
        if (pilot_mode && *pilot_mode == "orthogonal" && !tau)
            config.pilots = {{cfmimo::PilotMode::orthogonal, 0}};
        if (realizations) set("realizations", std::to_string(*realizations));
        if (seed) set("seed", std::to_string(*seed));
        if (scheme) set("scheme", *scheme);
        if (out) set("out", *out);
        if (threads) set("threads", std::to_string(*threads));
        if (trace) config.trace = true;
        cfmimo::finalize_config(config);
        config.validate();

        if (print_config) {
            std::cout << cfmimo::to_config_text(config);
            return 0;
        }
        if (oracle)
            return run_oracle_suite(config);

        const auto result = cfmimo::run_experiment(config);
        cfmimo::write_outputs(result, config);
        for (const auto& c : result.curves) {
            std::printf("%-24s median %.4f  5%%-outage %.4f  mean min-rate %.4f  flagged %d\n", c.label().c_str(),
                        c.summary.median, c.summary.outage5, c.summary.mean_min_rate, c.summary.flagged);
        }
        std::printf("outputs written to %s\n", config.out_dir.c_str());
        if (result.failed) {
            std::fprintf(stderr, "run failed: %s\n", result.failure.c_str());
            return 2;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

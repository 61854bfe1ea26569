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

#include "cfmimo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cfmimo/chanstats.hpp"
#include "cfmimo/errors.hpp"

namespace cfmimo {

std::vector<CdfPoint> cdf(std::span<const double> values)
{
    if (values.empty())
        throw ParameterError("cdf: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<CdfPoint> table;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double prob = static_cast<double>(i + 1) / n;
        if (!table.empty() && table.back().rate == sorted[i])
            table.back().probability = prob;
        else
            table.push_back({sorted[i], prob});
    }
    return table;
}

double cdf_quantile(const std::vector<CdfPoint>& table, double p)
{
    if (table.empty())
        throw ParameterError("cdf_quantile: empty table");
    // Guard against i/N roundoff just below p.
    const auto it = std::find_if(table.begin(), table.end(),
                                 [p](const CdfPoint& c) { return c.probability >= p - 1e-12; });
    return it == table.end() ? table.back().rate : it->rate;
}

std::string Curve::label() const
{
    return std::string(to_string(scheme)) + "_" + pilots.label();
}

const Curve* ExperimentResult::find(Scheme scheme, const std::string& pilot_label) const
{
    for (const auto& c : curves)
        if (c.scheme == scheme && c.pilots.label() == pilot_label)
            return &c;
    return nullptr;
}

namespace {

Rng stream_rng(std::uint64_t master, int index, std::uint32_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(index), stream};
    return Rng(seq);
}

constexpr std::uint32_t kTopologyStream = 0x70700u;

SimParams params_for(const ExperimentConfig& config, const PilotSetting& setting)
{
    SimParams sp = config.params;
    sp.pilot_mode = setting.mode;
    sp.pilot_length = setting.effective_tau(sp.num_users);
    return sp;
}

std::vector<Scheme> schemes_of(Scheme s)
{
    if (s == Scheme::both)
        return {Scheme::proposed, Scheme::baseline};
    return {s};
}

struct Slot {
    std::vector<double> rates;
    double min_rate = 0.0;
    bool flagged = false;
    IterationTrace trace;
};

} // namespace

RealizationInputs realization_inputs(const ExperimentConfig& config, int index)
{
    RealizationInputs in;
    auto topo_rng = stream_rng(config.params.seed, index, kTopologyStream);
    in.topology = generate_topology(params_for(config, config.pilots.front()), topo_rng);
    for (std::size_t s = 0; s < config.pilots.size(); ++s) {
        const auto sp = params_for(config, config.pilots[s]);
        auto rng = stream_rng(config.params.seed, index, static_cast<std::uint32_t>(s + 1));
        in.pilots.push_back(assign_pilots(sp.num_users, sp.pilot_length, sp.pilot_mode, rng));
    }
    return in;
}

std::string realization_snapshot_json(const RealizationInputs& inputs, int index)
{
    nlohmann::json j;
    j["realization"] = index;
    j["topology"] = nlohmann::json::parse(topology_to_json(inputs.topology));
    auto pilots = nlohmann::json::array();
    for (const auto& pb : inputs.pilots)
        pilots.push_back({{"mode", to_string(pb.mode())}, {"tau", pb.tau()}, {"assignment", pb.assignment()}});
    j["pilots"] = std::move(pilots);
    return j.dump(1);
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const int R = config.realizations;
    const auto schemes = schemes_of(config.scheme);
    const std::size_t n_curves = schemes.size() * config.pilots.size();
    const auto curve_index = [&](std::size_t pilot, std::size_t scheme) { return pilot * schemes.size() + scheme; };

    // slots[curve][realization]
    std::vector<std::vector<Slot>> slots(n_curves, std::vector<Slot>(R));

    auto run_one = [&](int r) {
        const auto inputs = realization_inputs(config, r);
        for (std::size_t s = 0; s < config.pilots.size(); ++s) {
            const auto sp = params_for(config, config.pilots[s]);
            const ChannelStats stats(inputs.topology.beta, inputs.pilots[s].gram2(), sp.pilot_length, sp.pilot_snr);
            for (std::size_t j = 0; j < schemes.size(); ++j) {
                Slot& slot = slots[curve_index(s, j)][r];
                Solution sol;
                if (schemes[j] == Scheme::proposed) {
                    auto res = solve_p1(stats, sp, config.solver);
                    slot.flagged = !res.trace.converged;
                    slot.trace = std::move(res.trace);
                    if (!config.trace)
                        slot.trace.records.clear();
                    sol = std::move(res.solution);
                } else {
                    sol = solve_baseline(stats, sp, config.solver.power);
                }
                slot.rates.assign(sol.rate.data(), sol.rate.data() + sol.rate.size());
                slot.min_rate = sol.min_rate();
            }
        }
    };

    int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, R);
    if (threads == 1) {
        for (int r = 0; r < R; ++r)
            run_one(r);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int r = next++; r < R; r = next++) {
                    try {
                        run_one(r);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        next = R;
                    }
                }
            });
        }
        pool.clear();
        if (error)
            std::rethrow_exception(error);
    }

    ExperimentResult result;
    result.realizations = R;
    for (std::size_t s = 0; s < config.pilots.size(); ++s) {
        for (std::size_t j = 0; j < schemes.size(); ++j) {
            auto& cs = slots[curve_index(s, j)];
            Curve curve;
            curve.scheme = schemes[j];
            curve.pilots = config.pilots[s];
            std::vector<double> pooled;
            long iter_sum = 0;
            for (int r = 0; r < R; ++r) {
                auto& slot = cs[r];
                curve.rates.push_back(slot.rates);
                curve.min_rates.push_back(slot.min_rate);
                curve.flagged.push_back(slot.flagged ? 1 : 0);
                if (!slot.flagged)
                    pooled.insert(pooled.end(), slot.rates.begin(), slot.rates.end());
                iter_sum += slot.trace.iterations;
                curve.summary.max_iterations = std::max(curve.summary.max_iterations, slot.trace.iterations);
                curve.summary.cap_hits += slot.trace.cap_hits;
                curve.summary.flagged += slot.flagged ? 1 : 0;
                if (config.trace && schemes[j] == Scheme::proposed)
                    curve.traces.push_back(std::move(slot.trace));
            }
            auto& sm = curve.summary;
            sm.samples = static_cast<int>(pooled.size());
            sm.mean_iterations = static_cast<double>(iter_sum) / R;
            sm.mean_min_rate = std::accumulate(curve.min_rates.begin(), curve.min_rates.end(), 0.0) / R;
            if (!pooled.empty()) {
                curve.table = cdf(pooled);
                sm.median = cdf_quantile(curve.table, 0.5);
                sm.outage5 = cdf_quantile(curve.table, 0.05);
                sm.mean_rate = std::accumulate(pooled.begin(), pooled.end(), 0.0) / static_cast<double>(pooled.size());
            }
            if (sm.flagged > kMaxFlaggedFraction * R && !result.failed) {
                result.failed = true;
                result.failure = curve.label() + ": " + std::to_string(sm.flagged) + " of " + std::to_string(R)
                    + " realizations did not converge";
            }
            result.curves.push_back(std::move(curve));
        }
    }
    return result;
}

std::string summary_json(const ExperimentResult& result, const ExperimentConfig& config)
{
    nlohmann::json j;
    j["realizations"] = result.realizations;
    j["M"] = config.params.num_aps;
    j["K"] = config.params.num_users;
    j["D_km"] = config.params.side_km;
    j["seed"] = config.params.seed;
    j["rho"] = config.params.rho;
    j["p_p"] = config.params.pilot_snr;
    j["failed"] = result.failed;
    if (result.failed)
        j["failure"] = result.failure;

    auto curves = nlohmann::json::array();
    for (const auto& c : result.curves) {
        const auto& s = c.summary;
        nlohmann::json cj{{"label", c.label()},
                          {"scheme", to_string(c.scheme)},
                          {"pilots", c.pilots.label()},
                          {"median_rate", s.median},
                          {"outage5_rate", s.outage5},
                          {"mean_rate", s.mean_rate},
                          {"mean_min_rate", s.mean_min_rate},
                          {"samples", s.samples},
                          {"flagged", s.flagged}};
        if (c.scheme == Scheme::proposed) {
            cj["mean_iterations"] = s.mean_iterations;
            cj["max_iterations"] = s.max_iterations;
            cj["fixed_point_cap_hits"] = s.cap_hits;
        }
        curves.push_back(std::move(cj));
    }
    j["curves"] = std::move(curves);

    auto comparisons = nlohmann::json::array();
    for (const auto& p : config.pilots) {
        const auto* prop = result.find(Scheme::proposed, p.label());
        const auto* base = result.find(Scheme::baseline, p.label());
        if (!prop || !base)
            continue;
        int dominated = 0;
        for (int r = 0; r < result.realizations; ++r)
            dominated += prop->min_rates[r] >= base->min_rates[r] ? 1 : 0;
        comparisons.push_back({{"pilots", p.label()},
                               {"median_ratio", base->summary.median > 0.0 ? prop->summary.median / base->summary.median : 0.0},
                               {"dominance_fraction", static_cast<double>(dominated) / result.realizations}});
    }
    j["comparisons"] = std::move(comparisons);
    return j.dump(2);
}

void write_outputs(const ExperimentResult& result, const ExperimentConfig& config)
{
    namespace fs = std::filesystem;
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);

    auto open = [&](const std::string& name) {
        std::ofstream os(dir / name);
        if (!os)
            throw ConfigurationError("cannot write '" + (dir / name).string() + "'");
        os.precision(17);
        return os;
    };

    for (const auto& c : result.curves) {
        {
            auto os = open("rates_" + c.label() + ".csv");
            os << "realization,user,rate\n";
            for (std::size_t r = 0; r < c.rates.size(); ++r)
                for (std::size_t k = 0; k < c.rates[r].size(); ++k)
                    os << r << ',' << k << ',' << c.rates[r][k] << '\n';
        }
        {
            auto os = open("cdf_" + c.label() + ".csv");
            os << "rate_bits_per_s_per_Hz,cdf\n";
            for (const auto& p : c.table)
                os << p.rate << ',' << p.probability << '\n';
        }
        if (!c.traces.empty()) {
            auto os = open("trace_" + c.pilots.label() + ".csv");
            os << "realization,iteration,min_rate\n";
            for (std::size_t r = 0; r < c.traces.size(); ++r)
                for (const auto& rec : c.traces[r].records)
                    os << r << ',' << rec.iteration << ',' << rec.min_rate << '\n';
        }
    }
    {
        auto os = open("summary.json");
        os << summary_json(result, config) << '\n';
    }
    const int snaps = std::min(config.snapshots, result.realizations);
    for (int r = 0; r < snaps; ++r) {
        auto os = open("realization_" + std::to_string(r) + ".json");
        os << realization_snapshot_json(realization_inputs(config, r), r) << '\n';
    }
}

} // namespace cfmimo

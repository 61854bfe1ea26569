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

#include <benchmark/benchmark.h>

#include "cfmimo/maxmin.hpp"
#include "cfmimo/pilots.hpp"
#include "cfmimo/power.hpp"
#include "cfmimo/receiver.hpp"
#include "cfmimo/sinr.hpp"
#include "cfmimo/topology.hpp"

namespace {

struct Network {
    cfmimo::SimParams params;
    cfmimo::ChannelStats stats;
};

Network make_network(int M, int K, int tau)
{
    auto p = cfmimo::SimParams::with_defaults();
    p.num_aps = M;
    p.num_users = K;
    p.pilot_length = tau;
    cfmimo::Rng rng(p.seed);
    const auto topo = cfmimo::generate_topology(p, rng);
    const auto pilots = cfmimo::assign_pilots(K, tau, p.pilot_mode, rng);
    return {p, cfmimo::ChannelStats(topo.beta, pilots.gram2(), tau, p.pilot_snr)};
}

void BM_SinrK(benchmark::State& state)
{
    const auto net = make_network(static_cast<int>(state.range(0)), 20, 10);
    const Eigen::VectorXd q = Eigen::VectorXd::Ones(20);
    const Eigen::VectorXd u = cfmimo::uniform_filters(net.params.num_aps, 20).col(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(cfmimo::sinr_k(net.stats, q, u, net.params.rho, 0));
}
BENCHMARK(BM_SinrK)->Arg(60)->Arg(200);

void BM_OptimalFilter(benchmark::State& state)
{
    const auto net = make_network(static_cast<int>(state.range(0)), 20, 10);
    const Eigen::VectorXd q = Eigen::VectorXd::Ones(20);
    for (auto _ : state)
        benchmark::DoNotOptimize(cfmimo::optimal_filter(net.stats, q, net.params.rho, 0));
}
BENCHMARK(BM_OptimalFilter)->Arg(60)->Arg(200);

void BM_MaxminPower(benchmark::State& state)
{
    const auto net = make_network(60, 20, 10);
    const Eigen::MatrixXd U = cfmimo::optimal_filters(net.stats, Eigen::VectorXd::Ones(20), net.params.rho);
    const auto coeff = cfmimo::extract_coefficients(net.stats, U, net.params.rho);
    const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(20);
    for (auto _ : state)
        benchmark::DoNotOptimize(cfmimo::maxmin_power(coeff, pmax));
}
BENCHMARK(BM_MaxminPower);

void BM_SolveP1(benchmark::State& state)
{
    const auto net = make_network(60, 20, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cfmimo::solve_p1(net.stats, net.params));
}
BENCHMARK(BM_SolveP1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

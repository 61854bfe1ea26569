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

#include "doctest.h"

#include <cmath>

#include "cfmimo/maxmin.hpp"
#include "cfmimo/receiver.hpp"
#include "reference.hpp"

using namespace cfmimo;

TEST_CASE("single user, single AP")
{
    const ChannelStats s(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1), 1, 1.0);
    const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(1);
    const auto r = solve_p1(s, 1.0, pmax);
    CHECK(r.trace.converged);
    CHECK(r.trace.iterations == 1);
    CHECK(r.solution.q(0) == 1.0);
    CHECK(std::abs(r.solution.min_sinr() - 0.25) <= 1e-12);
    const auto b = solve_baseline(s, 1.0, pmax);
    CHECK(std::abs(b.min_sinr() - r.solution.min_sinr()) <= 1e-12);
}

TEST_CASE("trace is monotone and ends at a fixed point")
{
    for (int trial = 0; trial < 4; ++trial) {
        const auto inst = testing::make_instance(30, 8, trial % 2 ? 4 : 8,
                                                 trial % 2 ? PilotMode::random : PilotMode::orthogonal, 300 + trial);
        const auto r = solve_p1(inst.stats, inst.params);
        REQUIRE(r.trace.records.size() == static_cast<std::size_t>(r.trace.iterations) + 1);
        CHECK(r.trace.converged);
        for (std::size_t i = 1; i < r.trace.records.size(); ++i)
            CHECK(r.trace.records[i].min_rate >= r.trace.records[i - 1].min_rate - 1e-8);
        CHECK(r.solution.min_sinr() == doctest::Approx(r.trace.records.back().min_sinr).epsilon(1e-12));

        // The filters were built for the previous powers, which moved by less
        // than the convergence tolerance.
        const Eigen::MatrixXd U = optimal_filters(inst.stats, r.solution.q, inst.params.rho);
        CHECK((U - r.solution.U).cwiseAbs().maxCoeff() <= 1e-3);
        // One more round does not move the objective beyond the tolerance.
        const auto coeff = extract_coefficients(inst.stats, U, inst.params.rho);
        const auto again = maxmin_power(coeff, Eigen::VectorXd::Constant(8, inst.params.p_max));
        CHECK(again.t <= r.solution.min_sinr() * (1.0 + 2e-4));
    }
}

TEST_CASE("optimized filters dominate uniform combining")
{
    for (int trial = 0; trial < 5; ++trial) {
        const auto inst = testing::make_instance(40, 10, 5, PilotMode::random, 50 + trial);
        const auto p = solve_p1(inst.stats, inst.params);
        const auto b = solve_baseline(inst.stats, inst.params);
        CHECK(p.solution.min_rate() >= b.min_rate());
        CHECK((b.U.array() == 1.0 / std::sqrt(40.0)).all());
    }
}

TEST_CASE("baseline initialization")
{
    const auto inst = testing::make_instance(24, 6, 3, PilotMode::random, 8);
    SolverOptions opts;
    opts.init = PowerInit::baseline;
    const auto warm = solve_p1(inst.stats, inst.params, opts);
    const auto cold = solve_p1(inst.stats, inst.params);
    CHECK(warm.trace.converged);
    CHECK(warm.solution.min_sinr() == doctest::Approx(cold.solution.min_sinr()).epsilon(1e-3));
}

TEST_CASE("iteration cap")
{
    const auto inst = testing::make_instance(24, 6, 3, PilotMode::random, 9);
    SolverOptions opts;
    opts.max_iters = 1;
    opts.eps_converge = 1e-15;
    const auto r = solve_p1(inst.stats, inst.params, opts);
    CHECK(r.trace.iterations == 1);
    CHECK_FALSE(r.trace.converged);
}

TEST_CASE("trace csv")
{
    const ChannelStats s(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1), 1, 1.0);
    const auto csv = solve_p1(s, 1.0, Eigen::VectorXd::Ones(1)).trace.to_csv();
    CHECK(csv.rfind("iteration,min_rate\n0,", 0) == 0);
    CHECK(csv.find("\n1,") != std::string::npos);
}

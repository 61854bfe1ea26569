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
#include <random>

#include "cfmimo/errors.hpp"
#include "cfmimo/power.hpp"
#include "cfmimo/receiver.hpp"
#include "cfmimo/sinr.hpp"
#include "reference.hpp"

using namespace cfmimo;

namespace {

SinrCoefficients unit_coefficients()
{
    const ChannelStats s(Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1), 1, 1.0);
    return extract_coefficients(s, Eigen::MatrixXd::Ones(1, 1), 1.0);
}

SinrCoefficients instance_coefficients(int M, int K, int tau, PilotMode mode, std::uint64_t seed)
{
    const auto inst = testing::make_instance(M, K, tau, mode, seed);
    const Eigen::MatrixXd U = optimal_filters(inst.stats, Eigen::VectorXd::Ones(K), inst.params.rho);
    return extract_coefficients(inst.stats, U, inst.params.rho);
}

} // namespace

TEST_CASE("single-user coefficients")
{
    const auto c = unit_coefficients();
    CHECK(c.b(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.c(0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.a(0, 0) == 0.0);
    CHECK(c.sinr(Eigen::VectorXd::Ones(1), 0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("coefficients reproduce the closed-form SINR")
{
    std::mt19937_64 rng(21);
    for (auto mode : {PilotMode::orthogonal, PilotMode::random}) {
        const int K = 5;
        const auto inst = testing::make_instance(14, K, mode == PilotMode::orthogonal ? K : 2, mode, 21);
        const double rho = inst.params.rho;
        Eigen::MatrixXd U(14, K);
        for (int k = 0; k < K; ++k)
            U.col(k) = testing::random_unit(14, rng).cwiseAbs();
        const auto coeff = extract_coefficients(inst.stats, U, rho);
        CHECK((coeff.a.array() >= 0.0).all());
        CHECK((coeff.b.array() >= 0.0).all());
        CHECK((coeff.c.array() > 0.0).all());
        CHECK(coeff.a.diagonal().cwiseAbs().maxCoeff() == 0.0);
        if (mode == PilotMode::orthogonal)
            CHECK(coeff.a.cwiseAbs().maxCoeff() == 0.0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto q = testing::random_powers(K, 1.0, rng);
            for (int k = 0; k < K; ++k) {
                const double ref = sinr_k(inst.stats, q, U.col(k), rho, k);
                CHECK(std::abs(coeff.sinr(q, k) - ref) <= 1e-10 * ref);
            }
        }
    }
}

TEST_CASE("degenerate filter is rejected")
{
    const ChannelStats s(Eigen::MatrixXd::Ones(2, 1), Eigen::MatrixXd::Ones(1, 1), 1, 1.0);
    const Eigen::MatrixXd U = (Eigen::MatrixXd(2, 1) << 1.0, -1.0).finished() / std::sqrt(2.0);
    CHECK_THROWS_AS(extract_coefficients(s, U, 1.0), NumericalError);
}

TEST_CASE("single-user feasibility closed form")
{
    // Feasible iff 2t < 1 and q = 2t / (1 - 2t) <= 1, i.e. t <= 0.25.
    const auto c = unit_coefficients();
    const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(1);
    for (double t : {0.01, 0.1, 0.2, 0.249}) {
        const auto r = feasible(c, t, pmax);
        REQUIRE(r.feasible);
        CHECK(r.q(0) == doctest::Approx(2 * t / (1 - 2 * t)).epsilon(1e-9));
    }
    const auto edge = feasible(c, 0.25, pmax);
    REQUIRE(edge.feasible);
    CHECK(edge.q(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(feasible(c, 0.2501, pmax).feasible);
    CHECK_FALSE(feasible(c, 0.5, pmax).feasible);
    CHECK_FALSE(feasible(c, 0.9, pmax).feasible);

    const auto tiny = feasible(c, 1e-9, pmax);
    CHECK(tiny.feasible);
    CHECK(tiny.q(0) < 1e-8);
    CHECK_THROWS_AS(feasible(c, 0.0, pmax), ParameterError);
}

TEST_CASE("single-user max-min power")
{
    const auto r = maxmin_power(unit_coefficients(), Eigen::VectorXd::Ones(1));
    CHECK(r.q(0) == 1.0);
    CHECK(r.t == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(maxmin_power(unit_coefficients(), Eigen::VectorXd::Ones(1), PowerOptions{0.0, {}, {}}),
                    ParameterError);
}

TEST_CASE("symmetric two-user instance equalizes")
{
    SinrCoefficients c;
    c.a = (Eigen::MatrixXd(2, 2) << 0.0, 0.3, 0.3, 0.0).finished();
    c.b = (Eigen::MatrixXd(2, 2) << 0.1, 0.2, 0.2, 0.1).finished();
    c.c = Eigen::Vector2d(0.5, 0.5);
    const auto r = maxmin_power(c, Eigen::Vector2d(1.0, 1.0));
    CHECK(r.q(0) == doctest::Approx(r.q(1)).epsilon(1e-9));
    const auto s = c.sinr_all(r.q);
    CHECK(s(0) == doctest::Approx(s(1)).epsilon(1e-9));
    // Both at full power: 1 / (0.3 + 0.1 + 0.2 + 0.5)
    CHECK(r.t == doctest::Approx(1.0 / 1.1).epsilon(1e-12));
}

TEST_CASE("two-user feasibility agrees with grid search")
{
    const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(2);
    for (int trial = 0; trial < 6; ++trial) {
        const auto c = instance_coefficients(10, 2, 1, PilotMode::random, 700 + trial);
        const auto r = maxmin_power(c, pmax);
        for (double f : {0.2, 0.5, 0.9, 1.1, 1.5, 3.0}) {
            const double t = f * r.t;
            CHECK(feasible(c, t, pmax).feasible == testing::grid_feasible(c, pmax, t));
        }
    }
}

TEST_CASE("feasibility is monotone in the target")
{
    std::mt19937_64 rng(4);
    const auto c = instance_coefficients(20, 6, 3, PilotMode::random, 44);
    const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(6);
    const double hi = maxmin_power(c, pmax).t_upper;
    std::uniform_real_distribution<double> u(0.0, hi);
    for (int i = 0; i < 200; ++i) {
        double t1 = u(rng), t2 = u(rng);
        if (t1 > t2)
            std::swap(t1, t2);
        if (t1 <= 0.0)
            continue;
        if (feasible(c, t2, pmax).feasible)
            CHECK(feasible(c, t1, pmax).feasible);
    }
}

TEST_CASE("max-min optimum is tight and minimal")
{
    for (int trial = 0; trial < 5; ++trial) {
        const int K = 6;
        const auto c = instance_coefficients(24, K, 3, PilotMode::random, 900 + trial);
        const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(K);
        const auto r = maxmin_power(c, pmax);
        const auto s = c.sinr_all(r.q);
        CHECK(s.minCoeff() == doctest::Approx(r.t).epsilon(1e-12));
        CHECK((r.q.array() <= pmax.array()).all());
        CHECK((r.q.array() >= 0.0).all());
        CHECK(r.q.maxCoeff() == 1.0);
        // Nothing better than t (1 + tol) is feasible.
        CHECK_FALSE(feasible(c, r.t * (1.0 + 2e-4), pmax).feasible);
        // All users sit at the common target.
        CHECK(s.maxCoeff() <= r.t * (1.0 + 1e-3));
        // Lowering any single power by 1% breaks some constraint.
        for (int k = 0; k < K; ++k) {
            Eigen::VectorXd q = r.q;
            q(k) *= 0.99;
            CHECK(c.sinr_all(q).minCoeff() < r.t);
        }
    }
}

TEST_CASE("incumbent is never made worse")
{
    const auto c = instance_coefficients(16, 4, 2, PilotMode::random, 55);
    const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(4);
    const auto free_run = maxmin_power(c, pmax);
    PowerOptions opts;
    opts.incumbent = free_run.q;
    opts.tol = 0.2;
    const auto warm = maxmin_power(c, pmax, opts);
    CHECK(warm.t >= free_run.t);
}

TEST_CASE("bisection agrees with the log-domain GP solution")
{
    for (int trial = 0; trial < 4; ++trial) {
        const auto c = instance_coefficients(12, 3, 1 + trial % 2, PilotMode::random, 1200 + trial);
        const Eigen::VectorXd pmax = Eigen::VectorXd::Ones(3);
        const double gp = testing::gp_barrier_maxmin(c, pmax);
        const auto r = maxmin_power(c, pmax);
        CHECK(std::abs(r.t - gp) <= 1e-3 * gp);
    }
}

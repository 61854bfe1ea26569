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
#include <stdexcept>

#include "cfmimo/chanstats.hpp"
#include "reference.hpp"

using namespace cfmimo;

TEST_CASE("single-user hand example")
{
    const Eigen::MatrixXd beta = Eigen::MatrixXd::Ones(1, 1);
    const Eigen::MatrixXd gram2 = Eigen::MatrixXd::Ones(1, 1);
    const auto c = compute_c(beta, gram2, 1, 1.0);
    CHECK(c(0, 0) == 0.5);
    const auto g = compute_gamma(beta, c, 1, 1.0);
    CHECK(g(0, 0) == 0.5);
}

TEST_CASE("c_mk limits")
{
    Rng rng(5);
    const auto inst = testing::make_instance(6, 4, 4, PilotMode::orthogonal, 5);
    const auto& beta = inst.stats.beta();
    const auto& gram2 = inst.stats.gram2();

    SUBCASE("vanishing pilot power")
    {
        const double pp = 1e-30;
        const auto c = compute_c(beta, gram2, 4, pp);
        const Eigen::MatrixXd expect = std::sqrt(4 * pp) * beta;
        CHECK(((c - expect).array().abs() / expect.array()).maxCoeff() < 1e-12);
    }
    SUBCASE("orthogonal pilots keep only the own term")
    {
        const double pp = inst.params.pilot_snr;
        const auto c = compute_c(beta, gram2, 4, pp);
        const Eigen::ArrayXXd expect = std::sqrt(4 * pp) * beta.array() / (4 * pp * beta.array() + 1.0);
        CHECK(((c.array() - expect).abs() / expect).maxCoeff() < 1e-14);
    }
    SUBCASE("large pilot power gives perfect estimates")
    {
        const auto c = compute_c(beta, gram2, 4, 1e30);
        const auto g = compute_gamma(beta, c, 4, 1e30);
        CHECK(((g - beta).array().abs() / beta.array()).maxCoeff() < 1e-9);
    }
}

TEST_CASE("estimate variance stays below channel variance")
{
    for (auto mode : {PilotMode::orthogonal, PilotMode::random}) {
        const int tau = mode == PilotMode::orthogonal ? 8 : 3;
        const auto inst = testing::make_instance(20, 8, tau, mode, 17);
        CHECK((inst.stats.gamma().array() > 0.0).all());
        CHECK((inst.stats.gamma().array() < inst.stats.beta().array()).all());
        CHECK((inst.stats.c().array() > 0.0).all());
    }
}

TEST_CASE("assemble_user_matrices")
{
    const auto inst = testing::make_instance(10, 5, 2, PilotMode::random, 23);
    const auto& s = inst.stats;
    for (int k = 0; k < 5; ++k) {
        const auto um = assemble_user_matrices(s, k);
        CHECK(um.delta[k] == um.gamma);
        CHECK(um.rmat == s.gamma().col(k));
        for (int kp = 0; kp < 5; ++kp) {
            for (int m = 0; m < 10; ++m) {
                CHECK(um.delta[kp](m) * s.beta()(m, k) == doctest::Approx(s.gamma()(m, k) * s.beta()(m, kp)).epsilon(1e-12));
                CHECK(um.dmat[kp](m) == doctest::Approx(s.beta()(m, kp) * s.gamma()(m, k)).epsilon(1e-14));
                CHECK(um.dmat[kp](m) >= 0.0);
                CHECK(um.delta[kp](m) >= 0.0);
            }
        }
    }
    CHECK_THROWS_AS(assemble_user_matrices(s, 5), std::out_of_range);
}

TEST_CASE("single user has only the self D term")
{
    const Eigen::MatrixXd beta = (Eigen::MatrixXd(3, 1) << 1.0, 2.0, 0.5).finished();
    const ChannelStats s(beta, Eigen::MatrixXd::Ones(1, 1), 1, 1.0);
    const auto um = s.user_matrices(0);
    CHECK(um.dmat.size() == 1);
    for (int m = 0; m < 3; ++m)
        CHECK(um.dmat[0](m) == beta(m, 0) * s.gamma()(m, 0));
}

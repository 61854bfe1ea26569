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

#include "cfmimo/errors.hpp"
#include "cfmimo/pilots.hpp"

using namespace cfmimo;

TEST_CASE("orthogonal pilots")
{
    Rng rng(1);
    const auto pb = assign_pilots(20, 20, PilotMode::orthogonal, rng);
    CHECK(pb.gram2() == Eigen::MatrixXd::Identity(20, 20));
    CHECK_THROWS_AS(assign_pilots(20, 10, PilotMode::orthogonal, rng), ConfigurationError);
}

TEST_CASE("random pilots share base sequences")
{
    Rng rng(2);
    const auto pb = assign_pilots(40, 20, PilotMode::random, rng);
    CHECK(pb.gram2().rows() == 40);
    CHECK(pb.gram2().cols() == 40);
    CHECK(pb.gram2().diagonal() == Eigen::VectorXd::Ones(40));
    CHECK(pb.gram2() == pb.gram2().transpose());
    for (int k = 0; k < 40; ++k)
        for (int j = 0; j < 40; ++j) {
            const double g = pb.gram2()(k, j);
            CHECK((g == 0.0 || g == 1.0));
            CHECK((g == 1.0) == (pb.assignment()[k] == pb.assignment()[j]));
        }
}

TEST_CASE("gram2 agrees with inner products of the materialized pilot matrix")
{
    Rng rng(3);
    const auto pb = assign_pilots(12, 5, PilotMode::random, rng);
    const Eigen::MatrixXcd phi = pb.phi();
    const Eigen::MatrixXd g2 = (phi.adjoint() * phi).cwiseAbs2();
    CHECK((g2 - pb.gram2()).cwiseAbs().maxCoeff() < 1e-12);
    for (int k = 0; k < 12; ++k)
        CHECK(phi.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));

    // The base set itself is orthonormal.
    const Eigen::MatrixXcd base = Eigen::MatrixXcd::Identity(5, 5);
    CHECK(((base.adjoint() * base) - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("expected number of colliding pairs")
{
    // Each of the C(20, 2) = 190 pairs collides with probability 1/10.
    Rng rng(4);
    const int seeds = 4000;
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const auto pb = assign_pilots(20, 10, PilotMode::random, rng);
        total += (pb.gram2().sum() - 20.0) / 2.0;
    }
    // Collision count has variance below 190 * 0.1 * 0.9 * 3; 5 sigma on the mean.
    CHECK(total / seeds == doctest::Approx(19.0).epsilon(0.03));
}

TEST_CASE("explicit assignment validation")
{
    CHECK_THROWS_AS(PilotBook(2, PilotMode::random, {0, 2}), ConfigurationError);
    const PilotBook shared(1, PilotMode::random, {0, 0});
    CHECK(shared.gram2() == Eigen::MatrixXd::Ones(2, 2));
}

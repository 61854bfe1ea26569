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
#include "cfmimo/topology.hpp"

using namespace cfmimo;

TEST_CASE("noise_power matches hand evaluation")
{
    // 20e6 * 1.381e-23 * 290 * 10^0.9
    CHECK(noise_power(20e6, 9.0, 290.0) == doctest::Approx(6.36241029449455e-13).epsilon(1e-12));
    CHECK(noise_power(20e6, 0.0, 290.0) == doctest::Approx(8.0098e-14).epsilon(1e-12));
    CHECK(noise_power(40e6, 9.0, 290.0) == 2.0 * noise_power(20e6, 9.0, 290.0));
}

TEST_CASE("noise_power rejects non-positive input")
{
    CHECK_THROWS_AS(noise_power(0.0, 9.0, 290.0), ParameterError);
    CHECK_THROWS_AS(noise_power(20e6, 9.0, -1.0), ParameterError);
}

TEST_CASE("default normalized SNRs use 100 mW over the noise power")
{
    const auto p = SimParams::with_defaults();
    CHECK(p.rho == doctest::Approx(0.1 / 6.36241029449455e-13).epsilon(1e-12));
    CHECK(p.pilot_snr == doctest::Approx(p.rho));
}

TEST_CASE("wrap_distance")
{
    const double D = 1000.0;
    CHECK(wrap_distance({0, 0}, {0.9 * D, 0}, D) == doctest::Approx(0.1 * D));
    CHECK(wrap_distance({123, 456}, {123, 456}, D) == 0.0);
    CHECK(wrap_distance({0, 0}, {D / 2, D / 2}, D) == doctest::Approx(D / std::sqrt(2.0)));
}

TEST_CASE("wrap_distance is a bounded symmetric metric")
{
    const double D = 1000.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> c(0.0, D);
    for (int i = 0; i < 2000; ++i) {
        const Point a{c(rng), c(rng)}, b{c(rng), c(rng)}, e{c(rng), c(rng)};
        const double ab = wrap_distance(a, b, D);
        CHECK(ab == doctest::Approx(wrap_distance(b, a, D)));
        CHECK(ab <= D / std::sqrt(2.0) + 1e-9);
        CHECK(ab <= wrap_distance(a, e, D) + wrap_distance(e, b, D) + 1e-9);
    }
}

TEST_CASE("large_scale_fading")
{
    auto p = SimParams::with_defaults();
    p.shadow_std_db = 8.0;

    SUBCASE("flat and unshadowed below d0")
    {
        // -L - 15 log10(d1) - 20 log10(d0), L = 140.71508370390842 dB
        const double expect = std::pow(10.0, -81.1996337689487 / 10.0);
        CHECK(large_scale_fading(p, 5.0, 0.0) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(large_scale_fading(p, 5.0, 3.0) == large_scale_fading(p, 5.0, 0.0));
        CHECK(large_scale_fading(p, 0.0, 0.0) == large_scale_fading(p, 10.0, 0.0));
    }
    SUBCASE("shadowing factor beyond d1")
    {
        const double r = large_scale_fading(p, 300.0, 1.0) / large_scale_fading(p, 300.0, 0.0);
        CHECK(r == doctest::Approx(std::pow(10.0, 0.8)).epsilon(1e-12));
    }
    SUBCASE("non-increasing and continuous in distance")
    {
        double prev = large_scale_fading(p, 0.5, 0.0);
        for (double d = 1.0; d < 1500.0; d += 0.5) {
            const double cur = large_scale_fading(p, d, 0.0);
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
        for (double bp : {p.path_loss.d0_m, p.path_loss.d1_m}) {
            CHECK(large_scale_fading(p, bp * (1 + 1e-9), 0.0)
                  == doctest::Approx(large_scale_fading(p, bp * (1 - 1e-9), 0.0)).epsilon(1e-6));
        }
    }
}

TEST_CASE("generate_topology")
{
    auto p = SimParams::with_defaults();
    p.num_aps = 60;
    p.num_users = 20;
    p.side_km = 1.0;

    Rng r1(42), r2(42);
    const auto t1 = generate_topology(p, r1);
    const auto t2 = generate_topology(p, r2);
    CHECK(t1.beta.rows() == 60);
    CHECK(t1.beta.cols() == 20);
    CHECK((t1.beta.array() > 0.0).all());
    CHECK(t1.beta == t2.beta);
    CHECK(t1.shadow_z == t2.shadow_z);
    for (const auto& pt : t1.ap_positions) {
        CHECK(pt.x >= 0.0);
        CHECK(pt.x < 1000.0);
        CHECK(pt.y >= 0.0);
        CHECK(pt.y < 1000.0);
    }
}

TEST_CASE("user positions are uniform on the square")
{
    auto p = SimParams::with_defaults();
    p.num_aps = 1;
    p.num_users = 20;
    Rng rng(3);
    double sx = 0.0, sy = 0.0;
    const int draws = 2000;
    for (int i = 0; i < draws; ++i) {
        const auto t = generate_topology(p, rng);
        for (const auto& u : t.user_positions) {
            sx += u.x;
            sy += u.y;
        }
    }
    const double n = draws * 20.0;
    // Uniform on [0, 1000): sd of the mean = 1000 / sqrt(12 n) ~ 1.4 m.
    CHECK(std::abs(sx / n - 500.0) < 8.0);
    CHECK(std::abs(sy / n - 500.0) < 8.0);
}

TEST_CASE("topology JSON round trip")
{
    auto p = SimParams::with_defaults();
    p.num_aps = 5;
    p.num_users = 3;
    p.pilot_length = 3;
    Rng rng(11);
    const auto t = generate_topology(p, rng);
    const auto back = topology_from_json(topology_to_json(t));
    CHECK(back.beta == t.beta);
    CHECK(back.shadow_z == t.shadow_z);
    CHECK(back.ap_positions.size() == 5);
    CHECK(back.user_positions[2].x == t.user_positions[2].x);
}

TEST_CASE("SimParams validation")
{
    auto p = SimParams::with_defaults();
    p.pilot_mode = PilotMode::orthogonal;
    p.pilot_length = 5;
    CHECK_THROWS_AS(p.validate(), ConfigurationError);
    p = SimParams::with_defaults();
    p.rho = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = SimParams::with_defaults();
    p.path_loss.d0_m = 60.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

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

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfmimo/params.hpp"

namespace cfmimo {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// AP/user placement on the wrap-around square and the resulting
/// large-scale fading gains. beta(m, k) is the linear power gain between
/// AP m and user k.
struct Topology {
    std::vector<Point> ap_positions;
    std::vector<Point> user_positions;
    Eigen::MatrixXd beta;
    Eigen::MatrixXd shadow_z;

    int num_aps() const { return static_cast<int>(beta.rows()); }
    int num_users() const { return static_cast<int>(beta.cols()); }
};

/// Distance on the torus [0, side)^2: minimum over the nine images of b.
double wrap_distance(Point a, Point b, double side);

/// Path loss in dB (negative) of the three-slope model at distance_m.
double path_loss_db(const PathLossModel& model, double distance_m);

/// beta = PL * 10^(sigma_sh * z / 10); shadowing only beyond d1.
/// Distances below 1 m are clamped to 1 m.
double large_scale_fading(const SimParams& params, double distance_m, double shadow_z);

Topology generate_topology(const SimParams& params, Rng& rng);

std::string topology_to_json(const Topology& topology);
Topology topology_from_json(const std::string& text);

} // namespace cfmimo

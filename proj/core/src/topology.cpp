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

#include "cfmimo/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "cfmimo/errors.hpp"

namespace cfmimo {

namespace {

constexpr double kMinDistanceM = 1.0;

// Hata-COST231 constant term L (dB) for carrier in MHz, heights in m.
double hata_constant_db(const PathLossModel& m)
{
    const double lf = std::log10(m.carrier_mhz);
    return 46.3 + 33.9 * lf - 13.82 * std::log10(m.ap_height_m)
        - (1.1 * lf - 0.7) * m.user_height_m + (1.56 * lf - 0.8);
}

} // namespace

double wrap_distance(Point a, Point b, double side)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const double dx = a.x - (b.x + i * side);
            const double dy = a.y - (b.y + j * side);
            best = std::min(best, std::hypot(dx, dy));
        }
    }
    return best;
}

double path_loss_db(const PathLossModel& model, double distance_m)
{
    const double L = hata_constant_db(model);
    const double d = std::max(distance_m, kMinDistanceM) / 1000.0;
    const double d0 = model.d0_m / 1000.0;
    const double d1 = model.d1_m / 1000.0;
    if (d > d1)
        return -L - 35.0 * std::log10(d);
    if (d > d0)
        return -L - 15.0 * std::log10(d1) - 20.0 * std::log10(d);
    return -L - 15.0 * std::log10(d1) - 20.0 * std::log10(d0);
}

double large_scale_fading(const SimParams& params, double distance_m, double shadow_z)
{
    if (!(distance_m >= 0.0))
        throw ParameterError("large_scale_fading: distance must be non-negative");
    double gain_db = path_loss_db(params.path_loss, distance_m);
    if (distance_m > params.path_loss.d1_m)
        gain_db += params.shadow_std_db * shadow_z;
    return std::pow(10.0, gain_db / 10.0);
}

Topology generate_topology(const SimParams& params, Rng& rng)
{
    params.validate();
    const double side = params.side_m();
    const int M = params.num_aps;
    const int K = params.num_users;

    std::uniform_real_distribution<double> coord(0.0, side);
    std::normal_distribution<double> normal(0.0, 1.0);

    Topology topo;
    topo.ap_positions.resize(M);
    topo.user_positions.resize(K);
    for (auto& p : topo.ap_positions)
        p = {coord(rng), coord(rng)};
    for (auto& p : topo.user_positions)
        p = {coord(rng), coord(rng)};

    topo.shadow_z.resize(M, K);
    topo.beta.resize(M, K);
    for (int k = 0; k < K; ++k) {
        for (int m = 0; m < M; ++m) {
            const double z = normal(rng);
            const double d = wrap_distance(topo.ap_positions[m], topo.user_positions[k], side);
            topo.shadow_z(m, k) = z;
            topo.beta(m, k) = large_scale_fading(params, d, z);
        }
    }
    return topo;
}

namespace {

nlohmann::json points_to_json(const std::vector<Point>& pts)
{
    auto arr = nlohmann::json::array();
    for (const auto& p : pts)
        arr.push_back({p.x, p.y});
    return arr;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& mat)
{
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < mat.cols(); ++c)
            row.push_back(mat(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j)
{
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd mat(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j.at(r).size()) != cols)
            throw ConfigurationError("topology JSON: ragged matrix");
        for (Eigen::Index c = 0; c < cols; ++c)
            mat(r, c) = j.at(r).at(c).get<double>();
    }
    return mat;
}

} // namespace

std::string topology_to_json(const Topology& topology)
{
    nlohmann::json j;
    j["ap_positions_m"] = points_to_json(topology.ap_positions);
    j["user_positions_m"] = points_to_json(topology.user_positions);
    j["beta"] = matrix_to_json(topology.beta);
    j["shadow_z"] = matrix_to_json(topology.shadow_z);
    return j.dump(1);
}

Topology topology_from_json(const std::string& text)
{
    const auto j = nlohmann::json::parse(text);
    Topology topo;
    for (const auto& p : j.at("ap_positions_m"))
        topo.ap_positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    for (const auto& p : j.at("user_positions_m"))
        topo.user_positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    topo.beta = matrix_from_json(j.at("beta"));
    topo.shadow_z = matrix_from_json(j.at("shadow_z"));
    if (topo.beta.rows() != static_cast<Eigen::Index>(topo.ap_positions.size())
        || topo.beta.cols() != static_cast<Eigen::Index>(topo.user_positions.size()))
        throw ConfigurationError("topology JSON: beta shape does not match positions");
    return topo;
}

} // namespace cfmimo

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

#include "cfmimo/sinr.hpp"

#include <cmath>

#include "cfmimo/errors.hpp"

namespace cfmimo {

UserProjections project_user(const ChannelStats& stats, const Eigen::VectorXd& u, int k)
{
    const int K = stats.num_users();
    const auto& beta = stats.beta();
    const auto& gamma = stats.gamma();
    const auto& gram2 = stats.gram2();

    UserProjections p;
    p.gamma_dot = gamma.col(k).dot(u);

    const Eigen::ArrayXd u2g = u.array().square() * gamma.col(k).array();
    p.r_quad = u2g.sum();
    p.d_quad = beta.transpose() * u2g.matrix();

    p.delta_dot = Eigen::VectorXd::Zero(K);
    const Eigen::ArrayXd ug_over_b = u.array() * gamma.col(k).array() / beta.col(k).array();
    for (int kp = 0; kp < K; ++kp) {
        if (kp != k && gram2(k, kp) != 0.0)
            p.delta_dot(kp) = (ug_over_b * beta.col(kp).array()).sum();
    }
    return p;
}

double sinr_k(const ChannelStats& stats, const Eigen::VectorXd& q, const Eigen::VectorXd& u, double rho, int k)
{
    if (u.size() != stats.num_aps() || q.size() != stats.num_users())
        throw ConfigurationError("sinr_k: dimension mismatch");
    if (!(rho > 0.0))
        throw ParameterError("sinr_k: rho must be positive");

    const auto p = project_user(stats, u, k);
    const auto& gram2 = stats.gram2();
    const double numerator = q(k) * p.gamma_dot * p.gamma_dot;
    double denominator = p.d_quad.dot(q) + p.r_quad / rho;
    for (int kp = 0; kp < stats.num_users(); ++kp) {
        if (kp != k)
            denominator += q(kp) * gram2(k, kp) * p.delta_dot(kp) * p.delta_dot(kp);
    }
    return numerator / denominator;
}

double rate_from_sinr(double sinr)
{
    return std::log2(1.0 + sinr);
}

Solution evaluate_solution(const ChannelStats& stats, Eigen::MatrixXd U, Eigen::VectorXd q, double rho)
{
    const int K = stats.num_users();
    Solution s;
    s.U = std::move(U);
    s.q = std::move(q);
    s.sinr.resize(K);
    s.rate.resize(K);
    for (int k = 0; k < K; ++k) {
        s.sinr(k) = sinr_k(stats, s.q, s.U.col(k), rho, k);
        s.rate(k) = rate_from_sinr(s.sinr(k));
    }
    return s;
}

} // namespace cfmimo

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

#include "cfmimo/receiver.hpp"

#include <cmath>
#include <string>

#include "cfmimo/errors.hpp"

namespace cfmimo {

Eigen::MatrixXd DiagPlusLowRank::dense() const
{
    Eigen::MatrixXd B = diagonal.asDiagonal();
    for (const auto& t : terms)
        B.noalias() += t.weight * t.v * t.v.transpose();
    return B;
}

double DiagPlusLowRank::quadratic(const Eigen::VectorXd& u) const
{
    double value = (u.array().square() * diagonal.array()).sum();
    for (const auto& t : terms) {
        const double proj = t.v.dot(u);
        value += t.weight * proj * proj;
    }
    return value;
}

Eigen::VectorXd DiagPlusLowRank::solve(const Eigen::VectorXd& rhs) const
{
    if ((diagonal.array() <= 0.0).any())
        throw NumericalError("interference matrix has a non-positive diagonal");

    const Eigen::ArrayXd inv_d = diagonal.array().inverse();
    Eigen::VectorXd x = (inv_d * rhs.array()).matrix();
    if (terms.empty())
        return x;

    const auto M = diagonal.size();
    const auto r = static_cast<Eigen::Index>(terms.size());
    Eigen::MatrixXd V(M, r);
    for (Eigen::Index j = 0; j < r; ++j)
        V.col(j) = std::sqrt(terms[j].weight) * terms[j].v;

    const Eigen::MatrixXd inv_d_V = inv_d.matrix().asDiagonal() * V;
    Eigen::MatrixXd cap = Eigen::MatrixXd::Identity(r, r);
    cap.noalias() += V.transpose() * inv_d_V;
    Eigen::LLT<Eigen::MatrixXd> llt(cap);
    if (llt.info() != Eigen::Success)
        throw NumericalError("Woodbury capacitance matrix is not positive definite");
    x.noalias() -= inv_d_V * llt.solve(V.transpose() * x);
    return x;
}

DiagPlusLowRank build_B(const ChannelStats& stats, const Eigen::VectorXd& q, double rho, int k)
{
    const int K = stats.num_users();
    if (q.size() != K)
        throw ConfigurationError("build_B: q has wrong length");
    if (!(rho > 0.0))
        throw ParameterError("build_B: rho must be positive");
    if ((q.array() < 0.0).any())
        throw ParameterError("build_B: powers must be non-negative");

    const auto& gamma = stats.gamma();
    const auto& beta = stats.beta();
    const auto& gram2 = stats.gram2();

    DiagPlusLowRank B;
    // sum_k' q_k' beta_mk' gamma_mk + gamma_mk / rho
    B.diagonal = (gamma.col(k).array() * (beta * q).array() + gamma.col(k).array() / rho).matrix();
    for (int kp = 0; kp < K; ++kp) {
        const double w = q(kp) * gram2(k, kp);
        if (kp != k && w > 0.0)
            B.terms.push_back({w, stats.delta(k, kp)});
    }
    return B;
}

FilterSolution optimal_filter(const ChannelStats& stats, const Eigen::VectorXd& q, double rho, int k)
{
    const auto B = build_B(stats, q, rho, k);
    const Eigen::VectorXd g = stats.gamma().col(k);
    Eigen::VectorXd x = B.solve(g);
    const double gx = g.dot(x);
    const double norm = x.norm();
    if (!(norm > 0.0) || !std::isfinite(norm) || !(gx > 0.0))
        throw NumericalError("degenerate receiver filter for user " + std::to_string(k));
    FilterSolution sol;
    sol.u = x / norm;
    sol.eigenvalue = q(k) * gx;
    return sol;
}

Eigen::MatrixXd optimal_filters(const ChannelStats& stats, const Eigen::VectorXd& q, double rho)
{
    Eigen::MatrixXd U(stats.num_aps(), stats.num_users());
    for (int k = 0; k < stats.num_users(); ++k)
        U.col(k) = optimal_filter(stats, q, rho, k).u;
    return U;
}

Eigen::MatrixXd uniform_filters(int num_aps, int num_users)
{
    return Eigen::MatrixXd::Constant(num_aps, num_users, 1.0 / std::sqrt(static_cast<double>(num_aps)));
}

} // namespace cfmimo

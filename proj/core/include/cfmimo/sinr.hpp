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

#include <Eigen/Dense>

#include "cfmimo/chanstats.hpp"

namespace cfmimo {

/// Projections of a receiver filter u_k onto the per-user matrices; every
/// quadratic form in the SINR expression is a function of these.
struct UserProjections {
    double gamma_dot = 0.0;     ///< Gamma_k^T u
    Eigen::VectorXd delta_dot;  ///< Delta_kk'^T u (zero where gram2(k, k') == 0)
    Eigen::VectorXd d_quad;     ///< u^T D_kk' u
    double r_quad = 0.0;        ///< u^T R_k u
};

UserProjections project_user(const ChannelStats& stats, const Eigen::VectorXd& u, int k);

/// Closed-form SINR of user k for receiver filter u (unit norm) and powers q.
double sinr_k(const ChannelStats& stats, const Eigen::VectorXd& q, const Eigen::VectorXd& u, double rho, int k);

/// log2(1 + sinr)
double rate_from_sinr(double sinr);

struct Solution {
    Eigen::MatrixXd U; ///< column k is u_k
    Eigen::VectorXd q;
    Eigen::VectorXd sinr;
    Eigen::VectorXd rate;

    double min_sinr() const { return sinr.minCoeff(); }
    double min_rate() const { return rate.minCoeff(); }
};

/// Fills sinr and rate for the given filters and powers.
Solution evaluate_solution(const ChannelStats& stats, Eigen::MatrixXd U, Eigen::VectorXd q, double rho);

} // namespace cfmimo

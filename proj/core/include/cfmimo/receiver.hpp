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

#include <vector>

#include <Eigen/Dense>

#include "cfmimo/chanstats.hpp"

namespace cfmimo {

/// Symmetric positive definite matrix stored as diag(d) + sum_j w_j v_j v_j^T.
struct DiagPlusLowRank {
    struct Term {
        double weight;
        Eigen::VectorXd v;
    };

    Eigen::VectorXd diagonal;
    std::vector<Term> terms;

    Eigen::MatrixXd dense() const;
    double quadratic(const Eigen::VectorXd& u) const;

    /// Solves B x = rhs with the Woodbury identity; cost O(M r + r^3).
    /// Throws NumericalError if the diagonal or the capacitance matrix is not
    /// positive definite.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
};

/// Interference-plus-noise matrix B_k of the receiver design problem:
///   sum_{k' != k} q_k' gram2(k, k') Delta_kk' Delta_kk'^T + sum_k' q_k' D_kk' + R_k / rho
DiagPlusLowRank build_B(const ChannelStats& stats, const Eigen::VectorXd& q, double rho, int k);

struct FilterSolution {
    Eigen::VectorXd u;
    /// Largest generalized eigenvalue of (q_k Gamma_k Gamma_k^T, B_k), i.e. the attained SINR.
    double eigenvalue = 0.0;
};

/// Exact maximizer of the SINR Rayleigh quotient for fixed powers: the numerator
/// is rank one, so u = B^-1 Gamma / ||B^-1 Gamma|| with sign fixed by Gamma^T u >= 0.
/// With q_k == 0 the filter is still B^-1 Gamma (the argmax ignores numerator scale).
FilterSolution optimal_filter(const ChannelStats& stats, const Eigen::VectorXd& q, double rho, int k);

/// optimal_filter for every user; column k of the result is u_k.
Eigen::MatrixXd optimal_filters(const ChannelStats& stats, const Eigen::VectorXd& q, double rho);

/// Uniform combining u_mk = 1/sqrt(M) for every user.
Eigen::MatrixXd uniform_filters(int num_aps, int num_users);

} // namespace cfmimo

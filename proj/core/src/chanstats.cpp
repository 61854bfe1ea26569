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

#include "cfmimo/chanstats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cfmimo/errors.hpp"

namespace cfmimo {

Eigen::MatrixXd compute_c(const Eigen::MatrixXd& beta, const Eigen::MatrixXd& gram2, int tau, double pilot_snr)
{
    if (gram2.rows() != beta.cols() || gram2.cols() != beta.cols())
        throw ConfigurationError("compute_c: gram2 must be K x K");
    if (tau < 1 || !(pilot_snr >= 0.0))
        throw ParameterError("compute_c: tau >= 1 and p_p >= 0 required");
    if ((beta.array() <= 0.0).any())
        throw ParameterError("compute_c: beta must be positive");

    const double tp = tau * pilot_snr;
    const double stp = std::sqrt(tp);
    // (beta * gram2)(m, k) = sum_k' beta_mk' gram2(k', k); gram2 is symmetric.
    const Eigen::MatrixXd contaminated = beta * gram2;
    return (stp * beta.array() / (tp * contaminated.array() + 1.0)).matrix();
}

Eigen::MatrixXd compute_gamma(const Eigen::MatrixXd& beta, const Eigen::MatrixXd& c, int tau, double pilot_snr)
{
    if (beta.rows() != c.rows() || beta.cols() != c.cols())
        throw ConfigurationError("compute_gamma: beta and c shapes differ");
    return (std::sqrt(tau * pilot_snr) * beta.array() * c.array()).matrix();
}

ChannelStats::ChannelStats(Eigen::MatrixXd beta, Eigen::MatrixXd gram2, int tau, double pilot_snr)
    : beta_(std::move(beta)), gram2_(std::move(gram2)), tau_(tau), pilot_snr_(pilot_snr)
{
    c_ = compute_c(beta_, gram2_, tau_, pilot_snr_);
    gamma_ = compute_gamma(beta_, c_, tau_, pilot_snr_);
}

Eigen::VectorXd ChannelStats::delta(int k, int kp) const
{
    if (k == kp)
        return gamma_.col(k);
    return (gamma_.col(k).array() * beta_.col(kp).array() / beta_.col(k).array()).matrix();
}

UserMatrices ChannelStats::user_matrices(int k) const
{
    const int K = num_users();
    if (k < 0 || k >= K)
        throw std::out_of_range("user index " + std::to_string(k) + " out of range");
    UserMatrices um;
    um.gamma = gamma_.col(k);
    um.rmat = gamma_.col(k);
    um.delta.reserve(K);
    um.dmat.reserve(K);
    for (int kp = 0; kp < K; ++kp) {
        um.delta.push_back(delta(k, kp));
        um.dmat.push_back((beta_.col(kp).array() * gamma_.col(k).array()).matrix());
    }
    return um;
}

UserMatrices assemble_user_matrices(const ChannelStats& stats, int k)
{
    return stats.user_matrices(k);
}

} // namespace cfmimo

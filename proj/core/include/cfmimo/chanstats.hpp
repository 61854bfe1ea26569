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

namespace cfmimo {

/// c_mk = sqrt(tau p_p) beta_mk / (tau p_p sum_k' beta_mk' gram2(k, k') + 1)
Eigen::MatrixXd compute_c(const Eigen::MatrixXd& beta, const Eigen::MatrixXd& gram2, int tau, double pilot_snr);

/// gamma_mk = sqrt(tau p_p) beta_mk c_mk, the variance of the MMSE estimate.
Eigen::MatrixXd compute_gamma(const Eigen::MatrixXd& beta, const Eigen::MatrixXd& c, int tau, double pilot_snr);

/// Per-user vectors of the closed-form SINR. Every matrix involved is
/// diagonal or rank one, so only the defining vectors are kept.
struct UserMatrices {
    Eigen::VectorXd gamma;              ///< Gamma_k = (gamma_1k .. gamma_Mk)
    std::vector<Eigen::VectorXd> delta; ///< delta[k'](m) = gamma_mk beta_mk' / beta_mk
    std::vector<Eigen::VectorXd> dmat;  ///< diagonal of D_kk': beta_mk' gamma_mk
    Eigen::VectorXd rmat;               ///< diagonal of R_k: gamma_mk
};

/// Large-scale statistics of one network realization: beta, the pilot Gram
/// matrix and the derived estimation statistics. Immutable after construction.
class ChannelStats {
public:
    ChannelStats(Eigen::MatrixXd beta, Eigen::MatrixXd gram2, int tau, double pilot_snr);

    int num_aps() const { return static_cast<int>(beta_.rows()); }
    int num_users() const { return static_cast<int>(beta_.cols()); }
    int tau() const { return tau_; }
    double pilot_snr() const { return pilot_snr_; }

    const Eigen::MatrixXd& beta() const { return beta_; }
    const Eigen::MatrixXd& gram2() const { return gram2_; }
    const Eigen::MatrixXd& c() const { return c_; }
    const Eigen::MatrixXd& gamma() const { return gamma_; }

    /// Delta_kk' as a dense M-vector.
    Eigen::VectorXd delta(int k, int kp) const;

    UserMatrices user_matrices(int k) const;

private:
    Eigen::MatrixXd beta_;
    Eigen::MatrixXd gram2_;
    int tau_;
    double pilot_snr_;
    Eigen::MatrixXd c_;
    Eigen::MatrixXd gamma_;
};

/// Throws std::out_of_range for an invalid user index.
UserMatrices assemble_user_matrices(const ChannelStats& stats, int k);

} // namespace cfmimo

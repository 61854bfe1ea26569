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

#include "cfmimo/params.hpp"

namespace cfmimo {

/// Pilot assignment drawn from tau orthonormal base sequences (the columns
/// of the tau x tau identity). gram2(k, k') = |phi_k^H phi_k'|^2.
class PilotBook {
public:
    /// Builds the book from an explicit assignment; each entry indexes a base
    /// sequence in [0, tau).
    PilotBook(int tau, PilotMode mode, std::vector<int> assignment);

    int tau() const { return tau_; }
    int num_users() const { return static_cast<int>(assignment_.size()); }
    PilotMode mode() const { return mode_; }
    const std::vector<int>& assignment() const { return assignment_; }
    const Eigen::MatrixXd& gram2() const { return gram2_; }

    /// Materialized pilot matrix Phi (tau x K), unit-norm columns.
    Eigen::MatrixXcd phi() const;

private:
    int tau_;
    PilotMode mode_;
    std::vector<int> assignment_;
    Eigen::MatrixXd gram2_;
};

/// Orthogonal mode hands user k base sequence k (requires tau >= K);
/// random mode draws each user's sequence i.i.d. uniform over the tau bases.
PilotBook assign_pilots(int num_users, int tau, PilotMode mode, Rng& rng);

} // namespace cfmimo

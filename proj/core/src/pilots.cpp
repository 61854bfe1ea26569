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

#include "cfmimo/pilots.hpp"

#include <string>

#include "cfmimo/errors.hpp"

namespace cfmimo {

PilotBook::PilotBook(int tau, PilotMode mode, std::vector<int> assignment)
    : tau_(tau), mode_(mode), assignment_(std::move(assignment))
{
    if (tau_ < 1)
        throw ConfigurationError("pilot length must be at least 1");
    const int K = num_users();
    for (int k = 0; k < K; ++k) {
        if (assignment_[k] < 0 || assignment_[k] >= tau_)
            throw ConfigurationError("pilot index " + std::to_string(assignment_[k]) + " out of range");
    }
    gram2_.setZero(K, K);
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < K; ++j)
            gram2_(k, j) = assignment_[k] == assignment_[j] ? 1.0 : 0.0;
}

Eigen::MatrixXcd PilotBook::phi() const
{
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(tau_, num_users());
    for (int k = 0; k < num_users(); ++k)
        phi(assignment_[k], k) = 1.0;
    return phi;
}

PilotBook assign_pilots(int num_users, int tau, PilotMode mode, Rng& rng)
{
    if (num_users < 1)
        throw ConfigurationError("assign_pilots: K must be at least 1");
    if (tau < 1)
        throw ConfigurationError("assign_pilots: tau must be at least 1");
    std::vector<int> assignment(num_users);
    if (mode == PilotMode::orthogonal) {
        if (tau < num_users)
            throw ConfigurationError("orthogonal pilots require tau >= K");
        for (int k = 0; k < num_users; ++k)
            assignment[k] = k;
    } else {
        std::uniform_int_distribution<int> pick(0, tau - 1);
        for (auto& a : assignment)
            a = pick(rng);
    }
    return PilotBook(tau, mode, std::move(assignment));
}

} // namespace cfmimo

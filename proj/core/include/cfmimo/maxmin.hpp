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

#include "cfmimo/chanstats.hpp"
#include "cfmimo/params.hpp"
#include "cfmimo/power.hpp"
#include "cfmimo/sinr.hpp"

namespace cfmimo {

enum class PowerInit {
    full_power, ///< q^(0) = p_max
    baseline,   ///< q^(0) = max-min powers of the uniform-combining baseline
};

struct SolverOptions {
    int max_iters = 50;
    /// Stop when |t^(i) - t^(i-1)| <= eps_converge * max(t^(i-1), 1).
    double eps_converge = 1e-4;
    PowerOptions power;
    PowerInit init = PowerInit::full_power;
};

struct IterationRecord {
    int iteration = 0;
    double min_sinr = 0.0;
    double min_rate = 0.0;
    Eigen::VectorXd q;
    Eigen::VectorXd sinr;
};

/// Record 0 is the starting powers evaluated with the first filter update;
/// record i (i >= 1) follows the i-th power update.
struct IterationTrace {
    std::vector<IterationRecord> records;
    int iterations = 0;
    bool converged = false;
    int cap_hits = 0;

    /// "iteration,min_rate" rows.
    std::string to_csv() const;
};

struct P1Result {
    Solution solution;
    IterationTrace trace;
};

/// Alternating optimization of receiver filters and powers for the max-min
/// SINR problem. Each round computes the optimal filters for the current
/// powers, then the max-min powers for those filters (warm-started from the
/// current powers, so the min-SINR never decreases).
P1Result solve_p1(const ChannelStats& stats, double rho, const Eigen::VectorXd& p_max,
                  const SolverOptions& opts = {});
P1Result solve_p1(const ChannelStats& stats, const SimParams& params, const SolverOptions& opts = {});

/// Uniform combining u_mk = 1/sqrt(M) followed by one max-min power solve.
Solution solve_baseline(const ChannelStats& stats, double rho, const Eigen::VectorXd& p_max,
                        const PowerOptions& opts = {});
Solution solve_baseline(const ChannelStats& stats, const SimParams& params, const PowerOptions& opts = {});

} // namespace cfmimo

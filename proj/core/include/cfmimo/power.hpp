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

#include <optional>

#include <Eigen/Dense>

#include "cfmimo/chanstats.hpp"

namespace cfmimo {

/// For fixed filters the SINR is linear-fractional in the powers:
///   SINR_k = q_k / (sum_{k' != k} a_kk' q_k' + sum_k' b_kk' q_k' + c_k)
/// The self term b_kk stays in the denominator.
struct SinrCoefficients {
    Eigen::MatrixXd a; ///< zero diagonal
    Eigen::MatrixXd b;
    Eigen::VectorXd c;

    int size() const { return static_cast<int>(c.size()); }
    double sinr(const Eigen::VectorXd& q, int k) const;
    Eigen::VectorXd sinr_all(const Eigen::VectorXd& q) const;
};

/// Throws NumericalError when Gamma_k^T u_k == 0 for some k.
SinrCoefficients extract_coefficients(const ChannelStats& stats, const Eigen::MatrixXd& U, double rho);

struct FixedPointOptions {
    double tol = 1e-10;
    int max_iters = 10000;
};

struct FeasibilityResult {
    bool feasible = false;
    /// Minimal power vector meeting every SINR >= t (valid when feasible).
    Eigen::VectorXd q;
    int iterations = 0;
    /// The iteration cap was reached and the answer came from a direct linear solve.
    bool cap_hit = false;
};

/// Decides whether some q in [0, p_max] reaches SINR_k >= t for all k, using the
/// monotone iteration
///   q_k <- t (sum_{k' != k} (a + b)_kk' q_k' + c_k) / (1 - t b_kk)
/// started from zero. The iterates increase monotonically towards the minimal
/// feasible point, so the first target above p_max_k proves infeasibility.
FeasibilityResult feasible(const SinrCoefficients& coeff, double t, const Eigen::VectorXd& p_max,
                           const FixedPointOptions& opts = {});

struct PowerOptions {
    /// Bisection stops once (hi - lo) <= tol * hi.
    double tol = 1e-4;
    FixedPointOptions fixed_point;
    /// A known feasible allocation; the result is never worse than it.
    std::optional<Eigen::VectorXd> incumbent;
};

struct PowerAllocation {
    Eigen::VectorXd q;
    /// min_k SINR_k at q.
    double t = 0.0;
    /// Interference-free upper bound min_k p_max_k / (b_kk p_max_k + c_k).
    double t_upper = 0.0;
    int bisection_steps = 0;
    int cap_hits = 0;
};

/// Max-min SINR power allocation by bisection on the common target t. The
/// minimal-power witness of the largest feasible target is scaled up until one
/// user reaches its limit, which can only raise every SINR.
PowerAllocation maxmin_power(const SinrCoefficients& coeff, const Eigen::VectorXd& p_max,
                             const PowerOptions& opts = {});

} // namespace cfmimo

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

#include "cfmimo/power.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfmimo/errors.hpp"
#include "cfmimo/sinr.hpp"

namespace cfmimo {

namespace {

// Slack on the power box so that targets landing exactly on p_max survive roundoff.
constexpr double kBoxSlack = 1e-12;

} // namespace

double SinrCoefficients::sinr(const Eigen::VectorXd& q, int k) const
{
    const double denom = a.row(k).dot(q) + b.row(k).dot(q) + c(k);
    return q(k) / denom;
}

Eigen::VectorXd SinrCoefficients::sinr_all(const Eigen::VectorXd& q) const
{
    const Eigen::VectorXd denom = (a + b) * q + c;
    return (q.array() / denom.array()).matrix();
}

SinrCoefficients extract_coefficients(const ChannelStats& stats, const Eigen::MatrixXd& U, double rho)
{
    const int K = stats.num_users();
    if (U.rows() != stats.num_aps() || U.cols() != K)
        throw ConfigurationError("extract_coefficients: U must be M x K");
    if (!(rho > 0.0))
        throw ParameterError("extract_coefficients: rho must be positive");

    SinrCoefficients coeff;
    coeff.a = Eigen::MatrixXd::Zero(K, K);
    coeff.b.resize(K, K);
    coeff.c.resize(K);
    const auto& gram2 = stats.gram2();
    for (int k = 0; k < K; ++k) {
        const auto p = project_user(stats, U.col(k), k);
        const double g2 = p.gamma_dot * p.gamma_dot;
        if (!(g2 > 0.0))
            throw NumericalError("degenerate filter: Gamma^T u vanishes for user " + std::to_string(k));
        for (int kp = 0; kp < K; ++kp) {
            if (kp != k)
                coeff.a(k, kp) = gram2(k, kp) * p.delta_dot(kp) * p.delta_dot(kp) / g2;
            coeff.b(k, kp) = p.d_quad(kp) / g2;
        }
        coeff.c(k) = p.r_quad / (rho * g2);
    }
    return coeff;
}

FeasibilityResult feasible(const SinrCoefficients& coeff, double t, const Eigen::VectorXd& p_max,
                           const FixedPointOptions& opts)
{
    const int K = coeff.size();
    if (p_max.size() != K)
        throw ConfigurationError("feasible: p_max has wrong length");
    if (!(t > 0.0))
        throw ParameterError("feasible: target must be positive");

    FeasibilityResult res;
    const Eigen::VectorXd self = coeff.b.diagonal();
    if ((t * self.array() >= 1.0).any())
        return res;

    // Cross-coupling (a + b) without the self term, and per-user scale t / (1 - t b_kk).
    Eigen::MatrixXd F = coeff.a + coeff.b;
    F.diagonal().setZero();
    const Eigen::ArrayXd scale = t / (1.0 - t * self.array());
    const Eigen::ArrayXd limit = p_max.array() * (1.0 + kBoxSlack);

    Eigen::VectorXd q = Eigen::VectorXd::Zero(K);
    for (int it = 1; it <= opts.max_iters; ++it) {
        Eigen::VectorXd next = (scale * ((F * q).array() + coeff.c.array())).matrix();
        res.iterations = it;
        if ((next.array() > limit).any())
            return res;
        const double change = (next - q).lpNorm<Eigen::Infinity>();
        q = std::move(next);
        if (change <= opts.tol * q.lpNorm<Eigen::Infinity>()) {
            res.feasible = true;
            res.q = q.cwiseMin(p_max);
            return res;
        }
    }

    // Slow geometric convergence: solve (diag(1 - t b_kk) - t F) q = t c directly.
    // A non-negative solution exists only when the spectral radius is below one.
    res.cap_hit = true;
    Eigen::MatrixXd A = -t * F;
    A.diagonal() = (1.0 - t * self.array()).matrix();
    const Eigen::VectorXd sol = A.partialPivLu().solve(t * coeff.c);
    if (!sol.allFinite() || (sol.array() < 0.0).any() || (sol.array() > limit).any())
        return res;
    res.feasible = true;
    res.q = sol.cwiseMin(p_max);
    return res;
}

PowerAllocation maxmin_power(const SinrCoefficients& coeff, const Eigen::VectorXd& p_max, const PowerOptions& opts)
{
    const int K = coeff.size();
    if (!(opts.tol > 0.0))
        throw ParameterError("maxmin_power: tolerance must be positive");
    if (p_max.size() != K || (p_max.array() <= 0.0).any())
        throw ParameterError("maxmin_power: p_max must be positive with length K");

    PowerAllocation out;
    const Eigen::ArrayXd self = coeff.b.diagonal().array();
    out.t_upper = (p_max.array() / (self * p_max.array() + coeff.c.array())).minCoeff();

    double lo = 0.0;
    Eigen::VectorXd witness = Eigen::VectorXd::Zero(K);
    if (opts.incumbent) {
        if (opts.incumbent->size() != K)
            throw ConfigurationError("maxmin_power: incumbent has wrong length");
        witness = opts.incumbent->cwiseMax(0.0).cwiseMin(p_max);
        lo = coeff.sinr_all(witness).minCoeff();
    }
    const double incumbent_t = lo;

    double hi = out.t_upper;
    while (hi - lo > opts.tol * hi) {
        const double mid = 0.5 * (lo + hi);
        auto fr = feasible(coeff, mid, p_max, opts.fixed_point);
        out.cap_hits += fr.cap_hit ? 1 : 0;
        ++out.bisection_steps;
        if (fr.feasible) {
            lo = mid;
            witness = std::move(fr.q);
        } else {
            hi = mid;
        }
    }

    // Scaling every power up by the same factor raises every SINR (c > 0), so
    // push the witness onto the box before reporting.
    if (witness.maxCoeff() > 0.0) {
        Eigen::Index top = 0;
        const double ratio = (witness.array() / p_max.array()).maxCoeff(&top);
        witness = (witness / ratio).cwiseMin(p_max);
        witness(top) = p_max(top);
    }
    out.t = K > 0 ? coeff.sinr_all(witness).minCoeff() : 0.0;
    if (opts.incumbent && out.t < incumbent_t) {
        witness = opts.incumbent->cwiseMax(0.0).cwiseMin(p_max);
        out.t = incumbent_t;
    }
    out.q = std::move(witness);
    return out;
}

} // namespace cfmimo

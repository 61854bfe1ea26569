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

#include "cfmimo/maxmin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfmimo/errors.hpp"
#include "cfmimo/receiver.hpp"

namespace cfmimo {

std::string IterationTrace::to_csv() const
{
    std::ostringstream os;
    os.precision(17);
    os << "iteration,min_rate\n";
    for (const auto& r : records)
        os << r.iteration << ',' << r.min_rate << '\n';
    return os.str();
}

namespace {

IterationRecord make_record(int iteration, const SinrCoefficients& coeff, const Eigen::VectorXd& q)
{
    IterationRecord rec;
    rec.iteration = iteration;
    rec.q = q;
    rec.sinr = coeff.sinr_all(q);
    rec.min_sinr = rec.sinr.minCoeff();
    rec.min_rate = rate_from_sinr(rec.min_sinr);
    return rec;
}

} // namespace

P1Result solve_p1(const ChannelStats& stats, double rho, const Eigen::VectorXd& p_max, const SolverOptions& opts)
{
    const int K = stats.num_users();
    if (opts.max_iters < 1)
        throw ParameterError("solve_p1: max_iters must be at least 1");
    if (!(opts.eps_converge > 0.0))
        throw ParameterError("solve_p1: eps_converge must be positive");
    if (p_max.size() != K)
        throw ConfigurationError("solve_p1: p_max has wrong length");

    Eigen::VectorXd q = p_max;
    if (opts.init == PowerInit::baseline)
        q = solve_baseline(stats, rho, p_max, opts.power).q;

    P1Result result;
    auto& trace = result.trace;
    Eigen::MatrixXd U;
    double prev_t = 0.0;
    for (int i = 1; i <= opts.max_iters; ++i) {
        U = optimal_filters(stats, q, rho);
        const auto coeff = extract_coefficients(stats, U, rho);
        if (i == 1) {
            trace.records.push_back(make_record(0, coeff, q));
            prev_t = trace.records.back().min_sinr;
        }

        PowerOptions popts = opts.power;
        popts.incumbent = q;
        auto alloc = maxmin_power(coeff, p_max, popts);
        trace.cap_hits += alloc.cap_hits;
        q = std::move(alloc.q);

        trace.records.push_back(make_record(i, coeff, q));
        trace.iterations = i;
        const double t = trace.records.back().min_sinr;
        if (std::abs(t - prev_t) <= opts.eps_converge * std::max(prev_t, 1.0)) {
            trace.converged = true;
            break;
        }
        prev_t = t;
    }

    result.solution = evaluate_solution(stats, std::move(U), std::move(q), rho);
    return result;
}

P1Result solve_p1(const ChannelStats& stats, const SimParams& params, const SolverOptions& opts)
{
    return solve_p1(stats, params.rho, Eigen::VectorXd::Constant(stats.num_users(), params.p_max), opts);
}

Solution solve_baseline(const ChannelStats& stats, double rho, const Eigen::VectorXd& p_max, const PowerOptions& opts)
{
    Eigen::MatrixXd U = uniform_filters(stats.num_aps(), stats.num_users());
    const auto coeff = extract_coefficients(stats, U, rho);
    PowerOptions popts = opts;
    popts.incumbent.reset();
    auto alloc = maxmin_power(coeff, p_max, popts);
    return evaluate_solution(stats, std::move(U), std::move(alloc.q), rho);
}

Solution solve_baseline(const ChannelStats& stats, const SimParams& params, const PowerOptions& opts)
{
    return solve_baseline(stats, params.rho, Eigen::VectorXd::Constant(stats.num_users(), params.p_max), opts);
}

} // namespace cfmimo

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

#include "cfmimo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "cfmimo/errors.hpp"
#include "cfmimo/sinr.hpp"

namespace cfmimo {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd out(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            out(r, c) = cplx(n(rng), n(rng));
    return out;
}

// P(k, k') = sum_m u_mk conj(ghat_mk) g_mk'
Eigen::MatrixXcd combined_gains(const ChannelDraw& draw, const Eigen::MatrixXd& U)
{
    const Eigen::MatrixXcd W = draw.ghat.conjugate().cwiseProduct(U.cast<cplx>());
    return W.transpose() * draw.g;
}

} // namespace

ChannelDraw draw_channel(const ChannelStats& stats, const PilotBook& pilots, Rng& rng)
{
    const int M = stats.num_aps();
    const int K = stats.num_users();
    if (pilots.num_users() != K || pilots.tau() != stats.tau())
        throw ConfigurationError("draw_channel: pilot book does not match channel statistics");

    ChannelDraw d;
    d.h = complex_gaussian(M, K, rng);
    d.g = (stats.beta().array().sqrt().cast<cplx>() * d.h.array()).matrix();
    d.pilot_noise = complex_gaussian(M, pilots.tau(), rng);

    const Eigen::MatrixXcd phi = pilots.phi();
    const double stp = std::sqrt(stats.tau() * stats.pilot_snr());
    // Row m of Yp is the received pilot block at AP m; despreading with phi_k
    // gives phi_k^H y_p,m = (Yp conj(phi))(m, k).
    const Eigen::MatrixXcd Yp = stp * d.g * phi.transpose() + d.pilot_noise;
    const Eigen::MatrixXcd despread = Yp * phi.conjugate();
    d.ghat = (stats.c().cast<cplx>().array() * despread.array()).matrix();

    d.noise = complex_gaussian(M, 1, rng);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    d.symbols.resize(K);
    for (int k = 0; k < K; ++k)
        d.symbols(k) = std::polar(1.0, phase(rng));
    return d;
}

std::complex<double> SignalSplit::reconstruct(const Eigen::VectorXcd& symbols, int k) const
{
    cplx r = desired * symbols(k) + noise;
    for (Eigen::Index kp = 0; kp < interference.size(); ++kp)
        if (kp != k)
            r += interference(kp) * symbols(kp);
    return r;
}

SignalSplit split_signal(const ChannelDraw& draw, const Eigen::VectorXd& u, const Eigen::VectorXd& q, double rho, int k)
{
    const auto K = draw.g.cols();
    const Eigen::VectorXcd w = draw.ghat.col(k).conjugate().cwiseProduct(u.cast<cplx>());
    const Eigen::VectorXcd gains = draw.g.transpose() * w;
    const double sr = std::sqrt(rho);

    SignalSplit s;
    s.interference = Eigen::VectorXcd::Zero(K);
    for (Eigen::Index kp = 0; kp < K; ++kp) {
        const cplx v = sr * std::sqrt(q(kp)) * gains(kp);
        if (kp == k)
            s.desired = v;
        else
            s.interference(kp) = v;
    }
    s.noise = (w.array() * draw.noise.array()).sum();

    Eigen::VectorXcd tx(K);
    for (Eigen::Index kp = 0; kp < K; ++kp)
        tx(kp) = std::sqrt(q(kp)) * draw.symbols(kp);
    const Eigen::VectorXcd y = sr * draw.g * tx + draw.noise;
    s.received = (w.array() * y.array()).sum();
    return s;
}

TermValues closed_form_terms(const ChannelStats& stats, const Eigen::VectorXd& u, const Eigen::VectorXd& q,
                             double rho, int k)
{
    const int K = stats.num_users();
    const auto& beta = stats.beta();
    const auto& gamma = stats.gamma();
    const auto& gram2 = stats.gram2();
    const Eigen::ArrayXd uk = u.array();
    const Eigen::ArrayXd gk = gamma.col(k).array();
    const Eigen::ArrayXd bk = beta.col(k).array();

    TermValues t;
    const double ug = (uk * gk).sum();
    t.ds2 = rho * q(k) * ug * ug;
    t.bu = rho * q(k) * (uk.square() * gk * bk).sum();
    for (int kp = 0; kp < K; ++kp) {
        if (kp == k)
            continue;
        const Eigen::ArrayXd bkp = beta.col(kp).array();
        const double incoherent = (uk.square() * bkp * gk).sum();
        const double coherent = (uk * gk * bkp / bk).sum();
        t.iui += rho * q(kp) * (incoherent + gram2(k, kp) * coherent * coherent);
    }
    t.tn = (uk.square() * gk).sum();
    return t;
}

double TermComparison::relative_error() const
{
    if (closed_form == 0.0)
        return empirical == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(empirical - closed_form) / std::abs(closed_form);
}

double OracleReport::max_term_error() const
{
    double e = 0.0;
    for (const auto& u : users)
        e = std::max({e, u.ds2.relative_error(), u.bu.relative_error(), u.iui.relative_error(), u.tn.relative_error()});
    return e;
}

double OracleReport::max_sinr_error() const
{
    double e = 0.0;
    for (const auto& u : users)
        e = std::max(e, u.sinr.relative_error());
    return e;
}

std::string OracleReport::to_json() const
{
    auto term = [](const TermComparison& c) {
        return nlohmann::json{{"empirical", c.empirical}, {"closed_form", c.closed_form},
                              {"relative_error", c.relative_error()}};
    };
    nlohmann::json j;
    j["draws"] = draws;
    j["low_confidence"] = low_confidence;
    j["max_reconstruction_error"] = max_reconstruction_error;
    j["max_term_error"] = max_term_error();
    j["max_sinr_error"] = max_sinr_error();
    auto arr = nlohmann::json::array();
    for (const auto& u : users) {
        arr.push_back({{"user", u.user},
                       {"ds2", term(u.ds2)},
                       {"bu", term(u.bu)},
                       {"iui", term(u.iui)},
                       {"tn", term(u.tn)},
                       {"sinr", term(u.sinr)},
                       {"bu_mean_offset", u.bu_mean_offset}});
    }
    j["users"] = std::move(arr);
    return j.dump(2);
}

OracleAccumulator::OracleAccumulator(const ChannelStats& stats, Eigen::MatrixXd U, Eigen::VectorXd q, double rho)
    : stats_(&stats), U_(std::move(U)), q_(std::move(q)), rho_(rho)
{
    const int K = stats.num_users();
    if (U_.rows() != stats.num_aps() || U_.cols() != K || q_.size() != K)
        throw ConfigurationError("OracleAccumulator: dimension mismatch");
    desired_mean_ = Eigen::VectorXcd::Zero(K);
    desired_m2_ = Eigen::VectorXd::Zero(K);
    iui_mean_ = Eigen::VectorXd::Zero(K);
    tn_mean_ = Eigen::VectorXd::Zero(K);
}

void OracleAccumulator::add(const ChannelDraw& draw)
{
    const auto K = U_.cols();
    const double sr = std::sqrt(rho_);
    const Eigen::MatrixXcd P = combined_gains(draw, U_);
    const Eigen::MatrixXcd W = draw.ghat.conjugate().cwiseProduct(U_.cast<cplx>());
    const Eigen::VectorXcd tn = W.transpose() * draw.noise;

    Eigen::VectorXcd tx(K);
    for (Eigen::Index k = 0; k < K; ++k)
        tx(k) = std::sqrt(q_(k)) * draw.symbols(k);
    const Eigen::VectorXcd y = sr * draw.g * tx + draw.noise;
    const Eigen::VectorXcd received = W.transpose() * y;

    ++count_;
    const double n = static_cast<double>(count_);
    for (Eigen::Index k = 0; k < K; ++k) {
        const cplx x = sr * std::sqrt(q_(k)) * P(k, k);
        const cplx delta = x - desired_mean_(k);
        desired_mean_(k) += delta / n;
        desired_m2_(k) += std::real(std::conj(delta) * (x - desired_mean_(k)));

        double iui = 0.0;
        cplx rebuilt = x * draw.symbols(k) + tn(k);
        for (Eigen::Index kp = 0; kp < K; ++kp) {
            if (kp == k)
                continue;
            const cplx v = sr * std::sqrt(q_(kp)) * P(k, kp);
            iui += std::norm(v);
            rebuilt += v * draw.symbols(kp);
        }
        iui_mean_(k) += (iui - iui_mean_(k)) / n;
        tn_mean_(k) += (std::norm(tn(k)) - tn_mean_(k)) / n;

        const double scale = std::abs(received(k));
        if (scale > 0.0)
            max_reconstruction_error_ = std::max(max_reconstruction_error_, std::abs(received(k) - rebuilt) / scale);
    }
}

void OracleAccumulator::merge(const OracleAccumulator& other)
{
    if (other.count_ == 0)
        return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    for (Eigen::Index k = 0; k < desired_mean_.size(); ++k) {
        const cplx delta = other.desired_mean_(k) - desired_mean_(k);
        desired_m2_(k) += other.desired_m2_(k) + std::norm(delta) * na * nb / n;
        desired_mean_(k) += delta * (nb / n);
        iui_mean_(k) = (na * iui_mean_(k) + nb * other.iui_mean_(k)) / n;
        tn_mean_(k) = (na * tn_mean_(k) + nb * other.tn_mean_(k)) / n;
    }
    count_ += other.count_;
    max_reconstruction_error_ = std::max(max_reconstruction_error_, other.max_reconstruction_error_);
}

OracleReport OracleAccumulator::report() const
{
    OracleReport rep;
    rep.draws = count_;
    rep.low_confidence = count_ < kOracleMinDraws;
    rep.max_reconstruction_error = max_reconstruction_error_;
    if (count_ == 0)
        return rep;

    const auto K = U_.cols();
    for (Eigen::Index k = 0; k < K; ++k) {
        const auto cf = closed_form_terms(*stats_, U_.col(k), q_, rho_, static_cast<int>(k));
        UserOracleReport ur;
        ur.user = static_cast<int>(k);
        ur.ds2 = {std::norm(desired_mean_(k)), cf.ds2};
        // Population variance: the mean is estimated from the same samples.
        ur.bu = {desired_m2_(k) / static_cast<double>(count_), cf.bu};
        ur.iui = {iui_mean_(k), cf.iui};
        ur.tn = {tn_mean_(k), cf.tn};
        const double emp_sinr = ur.ds2.empirical / (ur.bu.empirical + ur.iui.empirical + ur.tn.empirical);
        ur.sinr = {emp_sinr, sinr_k(*stats_, q_, U_.col(k), rho_, static_cast<int>(k))};
        const double ds = std::sqrt(cf.ds2);
        ur.bu_mean_offset = ds > 0.0 ? std::abs(desired_mean_(k) - ds) / ds : std::abs(desired_mean_(k));
        rep.users.push_back(ur);
    }
    return rep;
}

OracleReport empirical_terms(std::span<const ChannelDraw> draws, const ChannelStats& stats, const Eigen::MatrixXd& U,
                             const Eigen::VectorXd& q, double rho)
{
    OracleAccumulator acc(stats, U, q, rho);
    for (const auto& d : draws)
        acc.add(d);
    return acc.report();
}

OracleReport run_oracle(const ChannelStats& stats, const PilotBook& pilots, const Eigen::MatrixXd& U,
                        const Eigen::VectorXd& q, double rho, long num_draws, Rng& rng)
{
    if (num_draws < 1)
        throw ParameterError("run_oracle: need at least one draw");
    OracleAccumulator acc(stats, U, q, rho);
    for (long i = 0; i < num_draws; ++i)
        acc.add(draw_channel(stats, pilots, rng));
    return acc.report();
}

} // namespace cfmimo

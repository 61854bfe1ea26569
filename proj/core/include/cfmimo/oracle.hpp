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

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfmimo/chanstats.hpp"
#include "cfmimo/params.hpp"
#include "cfmimo/pilots.hpp"

namespace cfmimo {

/// One coherence block: small-scale fades, pilot and data noise, MMSE
/// estimates and the transmitted symbols.
struct ChannelDraw {
    Eigen::MatrixXcd h;           ///< M x K, CN(0, 1)
    Eigen::MatrixXcd g;           ///< M x K, sqrt(beta) h
    Eigen::MatrixXcd pilot_noise; ///< M x tau, row m is n_p,m
    Eigen::MatrixXcd ghat;        ///< M x K MMSE estimates
    Eigen::VectorXcd noise;       ///< M, data-phase noise n_m
    Eigen::VectorXcd symbols;     ///< K, unit modulus
};

/// ghat_mk = c_mk (sqrt(tau p_p) sum_k' g_mk' phi_k^H phi_k' + phi_k^H n_p,m)
ChannelDraw draw_channel(const ChannelStats& stats, const PilotBook& pilots, Rng& rng);

/// Split of the combined signal r_k = sum_m u_mk ghat*_mk y_m.
struct SignalSplit {
    /// sqrt(rho q_k) sum_m u_mk ghat*_mk g_mk; its mean is DS_k, the deviation BU_k.
    std::complex<double> desired;
    /// IUI_kk' (entry k is zero).
    Eigen::VectorXcd interference;
    /// TN_k = sum_m u_mk ghat*_mk n_m
    std::complex<double> noise;
    /// r_k computed directly from the received samples y_m.
    std::complex<double> received;

    /// desired s_k + sum_k' IUI_kk' s_k' + TN_k
    std::complex<double> reconstruct(const Eigen::VectorXcd& symbols, int k) const;
};

SignalSplit split_signal(const ChannelDraw& draw, const Eigen::VectorXd& u, const Eigen::VectorXd& q, double rho, int k);

/// Closed-form second moments of the signal terms for user k.
struct TermValues {
    double ds2 = 0.0; ///< |DS_k|^2
    double bu = 0.0;  ///< E|BU_k|^2
    double iui = 0.0; ///< sum_{k' != k} E|IUI_kk'|^2
    double tn = 0.0;  ///< E|TN_k|^2

    double sinr() const { return ds2 / (bu + iui + tn); }
};

TermValues closed_form_terms(const ChannelStats& stats, const Eigen::VectorXd& u, const Eigen::VectorXd& q,
                             double rho, int k);

struct TermComparison {
    double empirical = 0.0;
    double closed_form = 0.0;

    /// |empirical - closed_form| / |closed_form|; 0 when both vanish.
    double relative_error() const;
};

struct UserOracleReport {
    int user = 0;
    TermComparison ds2;
    TermComparison bu;
    TermComparison iui;
    TermComparison tn;
    /// Empirical term ratio vs the closed-form SINR expression.
    TermComparison sinr;
    /// Sample mean of BU_k, centred on the closed-form DS_k, relative to |DS_k|.
    double bu_mean_offset = 0.0;
};

struct OracleReport {
    std::vector<UserOracleReport> users;
    long draws = 0;
    bool low_confidence = false;
    /// Largest |r_k - reconstruction| / |r_k| seen over all draws and users.
    double max_reconstruction_error = 0.0;

    double max_term_error() const;
    double max_sinr_error() const;
    std::string to_json() const;
};

inline constexpr long kOracleMinDraws = 10000;

/// Streaming accumulator of the empirical signal-term statistics. Partial
/// accumulators from independent draw streams can be merged.
class OracleAccumulator {
public:
    OracleAccumulator(const ChannelStats& stats, Eigen::MatrixXd U, Eigen::VectorXd q, double rho);

    void add(const ChannelDraw& draw);
    void merge(const OracleAccumulator& other);
    long count() const { return count_; }
    OracleReport report() const;

private:
    const ChannelStats* stats_;
    Eigen::MatrixXd U_;
    Eigen::VectorXd q_;
    double rho_;
    long count_ = 0;
    Eigen::VectorXcd desired_mean_;
    Eigen::VectorXd desired_m2_;   // sum |x - mean|^2
    Eigen::VectorXd iui_mean_;     // running mean of sum_k' |IUI_kk'|^2
    Eigen::VectorXd tn_mean_;      // running mean of |TN_k|^2
    double max_reconstruction_error_ = 0.0;
};

OracleReport empirical_terms(std::span<const ChannelDraw> draws, const ChannelStats& stats, const Eigen::MatrixXd& U,
                             const Eigen::VectorXd& q, double rho);

/// Draws num_draws channels and accumulates them without storing the draws.
OracleReport run_oracle(const ChannelStats& stats, const PilotBook& pilots, const Eigen::MatrixXd& U,
                        const Eigen::VectorXd& q, double rho, long num_draws, Rng& rng);

} // namespace cfmimo

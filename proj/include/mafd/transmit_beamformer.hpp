// SPDX-License-Identifier: Apache-2.0
//
// mafd: movable-antenna full-duplex secrecy simulator
// Copyright (C) 2026 The mafd authors
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

#ifndef MAFD_TRANSMIT_BEAMFORMER_HPP
#define MAFD_TRANSMIT_BEAMFORMER_HPP

#include "mafd/link_metrics.hpp"
#include "mafd/types.hpp"

#include <stdexcept>
#include <vector>

namespace mafd
{

// Information and artificial-noise covariances (W, V).
struct CovariancePair
{
    CMat info;
    CMat noise;
};

// Channels seen by the transmit covariances once w_r is fixed.
struct EffectiveChannels
{
    cplx h1{0.0, 0.0}; // w_r^H h_UB
    CVec h2;           // sqrt(rho) H_SI^H w_r
    CMat h2_outer;     // h2 h2^H
    CMat bd_outer;     // h_BD h_BD^H
    CMat be_outer;     // h_BE h_BE^H
    cplx ud{0.0, 0.0};
    cplx ue{0.0, 0.0};
};

EffectiveChannels effective_channels(const ChannelSet &ch, const CVec &receive, double sic);

// weight * log2(Re Tr(W * on_info) + Re Tr(V * on_noise) + offset)
struct LogTerm
{
    double weight = 1.0;
    CMat on_info;
    CMat on_noise;
    double offset = 0.0;
};

// Sum secrecy rate written as a difference of two concave functions P - Q of (W, V).
struct SecrecyObjective
{
    std::vector<LogTerm> plus;  // P
    std::vector<LogTerm> minus; // Q
    bool artificial_noise = true;
    int n_tx = 0;
};

// Full duplex builds the four-term P and three-term Q (with the doubled Eve term);
// half duplex builds the time-shared variant with halved rates.
SecrecyObjective secrecy_objective(const EffectiveChannels &eff, const LinkParams &p, bool artificial_noise = true);

double objective_p(const SecrecyObjective &obj, const CovariancePair &x);
double objective_q(const SecrecyObjective &obj, const CovariancePair &x);
CovariancePair grad_p(const SecrecyObjective &obj, const CovariancePair &x);
CovariancePair grad_q(const SecrecyObjective &obj, const CovariancePair &x);

// P(x) minus the first-order expansion of Q around `anchor`. Equal to P - Q at the anchor and a
// lower bound of P - Q everywhere else, since Q is concave.
double linearized_objective(const SecrecyObjective &obj, const CovariancePair &x, const CovariancePair &anchor);

// Re Tr(a^H b) summed over both blocks.
double inner_product(const CovariancePair &a, const CovariancePair &b);

// Euclidean projection onto {W >= 0, V >= 0, Tr(W + V) <= budget}; V is pinned to zero when
// artificial noise is disabled.
CovariancePair project_feasible(const CovariancePair &x, double budget, bool artificial_noise = true);

struct InnerSolverOptions
{
    double relative_tolerance = 1e-8;
    double stationarity_tolerance = 1e-6;
    int max_iterations = 10000;
};

class NonConvergenceError : public std::runtime_error
{
public:
    NonConvergenceError(const std::string &what, CovariancePair last)
        : std::runtime_error(what), last_(std::move(last)) {}
    const CovariancePair &last_iterate() const noexcept { return last_; }

private:
    CovariancePair last_;
};

// Maximizes the linearized objective over the relaxed feasible set by projected gradient ascent
// (Barzilai-Borwein step, Armijo backtracking) in budget-normalized coordinates. The stationarity
// measure is ||X - Proj(X + grad)|| in those coordinates.
CovariancePair solve_inner_convex(const SecrecyObjective &obj, const CovariancePair &anchor, double budget,
                                  const InnerSolverOptions &opts = {});

struct ScaOptions
{
    double tolerance = 1e-3; // epsilon_1, absolute increment of P - Q
    int max_iterations = 30; // M
    InnerSolverOptions inner;
};

struct ScaState
{
    int iterations = 0;
    CovariancePair current;
    std::vector<double> history; // P - Q, starting with the initial point
    bool converged = false;
};

ScaState sca_loop(const SecrecyObjective &obj, const CovariancePair &initial, double budget, const ScaOptions &opts);

// W = V = budget / (4 N_t) I (V = 0 without artificial noise).
CovariancePair default_sca_start(int n_tx, double budget, bool artificial_noise = true);

struct RankOneFactor
{
    CVec vector;      // sqrt(lambda_1) u_1, first nonzero entry real positive
    double tightness; // lambda_2 / lambda_1
};

RankOneFactor rank_one_extract(const CMat &cov);

} // namespace mafd

#endif

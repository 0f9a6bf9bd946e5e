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

#include "mafd/ao_orchestrator.hpp"
#include "mafd/channel_model.hpp"
#include "mafd/receive_beamformer.hpp"
#include "mafd/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace mafd
{

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

CVec unit_or_first_axis(const CVec &h)
{
    const double n = h.norm();
    if (n >= 1e-15)
        return h / n;
    CVec e = CVec::Zero(h.size());
    e(0) = 1.0;
    return e;
}

constexpr double guard_slack = 1e-9;

} // namespace

std::string_view scheme_name(Scheme s)
{
    switch (s)
    {
    case Scheme::ma_fd_pso:
        return "MA-FD-PSO";
    case Scheme::ma_fd_pso_noan:
        return "MA-FD-PSO-NoAN";
    case Scheme::fpa_fd:
        return "FPA-FD";
    case Scheme::ma_fd_rp:
        return "MA-FD-RP";
    case Scheme::ma_hd_pso:
        return "MA-HD-PSO";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name)
{
    for (auto s : all_schemes)
        if (scheme_name(s) == name)
            return s;
    throw ConfigError("scheme", "unknown scheme id '" + std::string(name) + "'");
}

AoConfig AoConfig::from(const SystemConfig &cfg, Scheme scheme)
{
    AoConfig ao;
    ao.max_outer = cfg.ao_iterations;
    ao.tolerance = cfg.ao_tolerance;
    ao.scheme = scheme;
    ao.optimize_positions = scheme != Scheme::fpa_fd && scheme != Scheme::ma_fd_rp;
    ao.artificial_noise = scheme != Scheme::ma_fd_pso_noan;
    ao.budget = cfg.power_bs;
    ao.link = LinkParams::from(cfg, scheme == Scheme::ma_hd_pso ? DuplexMode::half : DuplexMode::full);
    ao.pso = PsoParams::from(cfg);
    ao.sca.tolerance = cfg.sca_tolerance;
    ao.sca.max_iterations = cfg.sca_iterations;
    ao.wavelength = cfg.wavelength;
    return ao;
}

AntennaLayout random_feasible_layout(int n_tx, int n_rx, double half_width, double min_distance, std::uint64_t seed,
                                     int max_attempts)
{
    Engine rng = make_engine(seed);
    std::uniform_real_distribution<double> coord(-half_width, half_width);
    auto draw_side = [&](int n)
    {
        RVec x(2 * n);
        for (int attempt = 0; attempt < max_attempts; ++attempt)
        {
            for (Eigen::Index d = 0; d < x.size(); ++d)
                x(d) = coord(rng);
            if (min_pairwise_distance(x) >= min_distance)
                return x;
        }
        throw std::runtime_error("no feasible antenna placement found within " + std::to_string(max_attempts) +
                                 " attempts");
    };
    AntennaLayout layout;
    layout.tx = draw_side(n_tx);
    layout.rx = draw_side(n_rx);
    return layout;
}

RVec fpa_positions(int n, double wavelength, double half_width)
{
    const double spacing = wavelength / 2.0;
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    int cols = 0;
    if (root * root == n)
        cols = root;
    else if ((n - 1) * spacing <= 2.0 * half_width)
        cols = n;
    else
        cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int rows = (n + cols - 1) / cols;

    RVec x(2 * n);
    for (int k = 0; k < n; ++k)
    {
        const int row = k / cols;
        const int col = k % cols;
        x(2 * k) = (col - 0.5 * (cols - 1)) * spacing;
        x(2 * k + 1) = (row - 0.5 * (rows - 1)) * spacing;
    }
    return clamp_to_region(x, half_width);
}

InitialState initialize_state(const Scenario &scenario, const SystemConfig &cfg, const AoConfig &ao,
                              std::uint64_t seed)
{
    InitialState init;
    const double hw = cfg.region_side() / 2.0;
    if (ao.scheme == Scheme::fpa_fd)
    {
        init.layout.tx = fpa_positions(cfg.n_tx, cfg.wavelength, hw);
        init.layout.rx = fpa_positions(cfg.n_rx, cfg.wavelength, hw);
    }
    else
        init.layout = random_feasible_layout(cfg.n_tx, cfg.n_rx, hw, cfg.min_distance,
                                             derive_seed(seed, {salt::layout}));

    const ChannelSet ch = evaluate_channels(scenario, init.layout);
    const CVec w = std::sqrt(ao.budget / 2.0) * unit_or_first_axis(ch.bd);
    init.state.info = w * w.adjoint();
    init.state.noise = ao.artificial_noise ? CMat((ao.budget / (2.0 * cfg.n_tx)) * CMat::Identity(cfg.n_tx, cfg.n_tx))
                                           : CMat::Zero(cfg.n_tx, cfg.n_tx);
    init.state.receive = unit_or_first_axis(ch.ub);
    return init;
}

AoResult alternating_optimize(const Scenario &scenario, const AoConfig &ao, const InitialState &init,
                              std::uint64_t seed)
{
    if (ao.max_outer < 1)
        throw ConfigError("C", "must be >= 1");
    if (!(ao.tolerance > 0.0))
        throw ConfigError("eps2", "must be > 0");

    const LinkParams &link = ao.link;
    const double sic = link.mode == DuplexMode::full ? link.sic : 0.0;

    AoResult res;
    res.layout = init.layout;
    res.state = init.state;
    if (!ao.artificial_noise)
        res.state.noise.setZero();

    auto ssr_of = [&](const AntennaLayout &layout, const BeamformingState &state)
    { return secrecy_report(scenario, layout, state, link); };

    AoTrace &trace = res.trace;
    double current = ssr_of(res.layout, res.state).sum;
    trace.ssr.push_back(current);
    trace.layouts.push_back(res.layout);
    trace.states.push_back(res.state);
    trace.termination = "iteration cap";

    for (int c = 1; c <= ao.max_outer; ++c)
    {
        AoIteration it;
        it.index = c;

        // Antenna positions.
        auto t0 = Clock::now();
        if (ao.optimize_positions)
        {
            PositionResult pos;
            try
            {
                pos = optimize_positions(res.layout, scenario, res.state, link, ao.pso,
                                         derive_seed(seed, {static_cast<std::uint64_t>(c)}));
            }
            catch (const std::exception &e)
            {
                throw StageError("positions", e.what());
            }
            it.positions_feasible = pos.feasible;
            const double candidate = ssr_of(pos.layout, res.state).sum;
            if (pos.feasible && candidate >= current - guard_slack)
            {
                res.layout = pos.layout;
                current = candidate;
            }
            else
                trace.events.push_back("c=" + std::to_string(c) + ": position update rejected");
        }
        it.positions_ms = ms_since(t0);

        // Transmit covariances.
        t0 = Clock::now();
        const ChannelSet ch = evaluate_channels(scenario, res.layout);
        {
            const SecrecyObjective obj =
                secrecy_objective(effective_channels(ch, res.state.receive, sic), link, ao.artificial_noise);
            ScaState sca;
            try
            {
                sca = sca_loop(obj, {res.state.info, res.state.noise}, ao.budget, ao.sca);
            }
            catch (const std::exception &e)
            {
                throw StageError("transmit", e.what());
            }
            it.sca_iterations = sca.iterations;
            it.sca_history = sca.history;
            it.relaxed_objective = sca.history.back();

            const RankOneFactor w = rank_one_extract(sca.current.info);
            BeamformingState candidate = res.state;
            candidate.info = w.vector * w.vector.adjoint();
            it.tightness = w.tightness;
            if (ao.artificial_noise)
            {
                const RankOneFactor v = rank_one_extract(sca.current.noise);
                candidate.noise = v.vector * v.vector.adjoint();
                it.tightness = std::max(it.tightness, v.tightness);
            }
            const RateReport rep = secrecy_report(ch, candidate, link);
            it.extracted_objective = rep.unclamped;
            if (rep.sum >= current - guard_slack)
            {
                res.state = candidate;
                current = rep.sum;
            }
            else
                trace.events.push_back("c=" + std::to_string(c) + ": transmit update rejected");
        }
        it.transmit_ms = ms_since(t0);

        // Receive beamformer.
        t0 = Clock::now();
        try
        {
            const CMat a = interference_covariance(ch.si, res.state.info, res.state.noise, sic, link.noise_bs);
            BeamformingState candidate = res.state;
            candidate.receive = optimal_receive_beamformer(a, ch.ub);
            const double value = secrecy_report(ch, candidate, link).sum;
            if (value >= current - guard_slack)
            {
                res.state = candidate;
                current = value;
            }
            else
                trace.events.push_back("c=" + std::to_string(c) + ": receive update rejected");
        }
        catch (const DegenerateChannelError &e)
        {
            trace.events.push_back("c=" + std::to_string(c) + ": receive update skipped: " + e.what());
        }
        it.receive_ms = ms_since(t0);

        const double previous = trace.ssr.back();
        it.ssr = current;
        trace.ssr.push_back(current);
        trace.iterations.push_back(std::move(it));
        trace.layouts.push_back(res.layout);
        trace.states.push_back(res.state);

        if (current <= 0.0 || (current - previous) / current <= ao.tolerance)
        {
            trace.termination = "converged";
            break;
        }
    }

    res.report = ssr_of(res.layout, res.state);
    res.feasible = violation_count(res.layout.tx, ao.pso.min_distance) == 0 &&
                   violation_count(res.layout.rx, ao.pso.min_distance) == 0;
    return res;
}

bool ConstraintReport::satisfied(double budget, double min_distance) const
{
    return receive_norm_error <= 1e-12 && min_eigenvalue >= -1e-9 && power_used <= budget * (1.0 + 1e-9) &&
           min_distance_tx >= min_distance && min_distance_rx >= min_distance && region_excess <= 0.0;
}

ConstraintReport check_constraints(const AntennaLayout &layout, const BeamformingState &state, double half_width)
{
    ConstraintReport r;
    r.receive_norm_error = std::fabs(state.receive.norm() - 1.0);
    Eigen::SelfAdjointEigenSolver<CMat> ew(state.info, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<CMat> ev(state.noise, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = std::min(ew.eigenvalues().minCoeff(), ev.eigenvalues().minCoeff());
    r.power_used = state.info.trace().real() + state.noise.trace().real();
    r.min_distance_tx = min_pairwise_distance(layout.tx);
    r.min_distance_rx = min_pairwise_distance(layout.rx);
    r.region_excess = std::max(layout.tx.cwiseAbs().maxCoeff(), layout.rx.cwiseAbs().maxCoeff()) - half_width;
    return r;
}

SchemeRun run_scheme_detailed(Scheme scheme, const Scenario &scenario, const SystemConfig &cfg, std::uint64_t seed)
{
    const auto t0 = Clock::now();
    const AoConfig ao = AoConfig::from(cfg, scheme);
    const InitialState init = initialize_state(scenario, cfg, ao, seed);

    SchemeRun run;
    run.result = alternating_optimize(scenario, ao, init, seed);

    ExperimentRecord &rec = run.record;
    rec.scheme = std::string(scheme_name(scheme));
    rec.seed = seed;
    rec.ssr = run.result.report.sum;
    rec.r_u = run.result.report.r_u;
    rec.r_d = run.result.report.r_d;
    rec.iters = static_cast<int>(run.result.trace.iterations.size());
    rec.feasible = run.result.feasible;
    if (!run.result.trace.iterations.empty())
    {
        const AoIteration &last = run.result.trace.iterations.back();
        rec.tightness = last.tightness;
        const double denom = std::max(std::fabs(last.relaxed_objective), 1e-12);
        rec.rank_one_gap = std::fabs(last.relaxed_objective - last.extracted_objective) / denom;
        rec.rank_one_flag = rec.rank_one_gap > 0.01;
    }
    rec.ms = ms_since(t0);
    return run;
}

ExperimentRecord run_scheme(Scheme scheme, const Scenario &scenario, const SystemConfig &cfg, std::uint64_t seed)
{
    return run_scheme_detailed(scheme, scenario, cfg, seed).record;
}

} // namespace mafd

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

#include "mafd/antenna_positioning.hpp"
#include "mafd/channel_model.hpp"
#include "mafd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mafd
{

PsoParams PsoParams::from(const SystemConfig &cfg)
{
    PsoParams p;
    p.particles = cfg.particles;
    p.iterations = cfg.pso_iterations;
    p.c1 = cfg.c1;
    p.c2 = cfg.c2;
    p.omega_min = cfg.omega_min;
    p.omega_max = cfg.omega_max;
    p.penalty = cfg.penalty;
    p.half_width = cfg.region_side() / 2.0;
    p.min_distance = cfg.min_distance;
    return p;
}

void PsoParams::validate() const
{
    if (particles < 1)
        throw ConfigError("I", "must be >= 1");
    if (iterations < 0)
        throw ConfigError("K", "must be >= 0");
    if (!(omega_min > 0.0 && omega_min <= omega_max))
        throw ConfigError("omega_min", "need 0 < omega_min <= omega_max");
    if (!(c1 > 0.0 && c2 > 0.0))
        throw ConfigError("c1", "learning factors must be > 0");
    if (!(penalty > 0.0))
        throw ConfigError("eta", "must be > 0");
    if (half_width < 0.0 || min_distance < 0.0)
        throw ConfigError("A", "region and minimum distance must be >= 0");
}

double inertia_weight(int k, int total, double omega_min, double omega_max)
{
    if (total <= 0)
        return omega_max;
    return omega_max - (omega_max - omega_min) * static_cast<double>(k) / static_cast<double>(total);
}

RVec clamp_to_region(const RVec &coords, double half_width)
{
    return coords.cwiseMax(-half_width).cwiseMin(half_width);
}

int violation_count(const RVec &coords, double min_distance)
{
    const Eigen::Index n = coords.size() / 2;
    int count = 0;
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            if (a != b && (position(coords, a) - position(coords, b)).norm() < min_distance)
            {
                ++count;
                break;
            }
    return count;
}

double min_pairwise_distance(const RVec &coords)
{
    const Eigen::Index n = coords.size() / 2;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b)
            best = std::min(best, (position(coords, a) - position(coords, b)).norm());
    return best;
}

double position_fitness(const RVec &candidate, ArraySide side, const AntennaLayout &layout, const Scenario &scenario,
                        const BeamformingState &state, const LinkParams &link, const PsoParams &params)
{
    AntennaLayout trial = layout;
    (side == ArraySide::transmit ? trial.tx : trial.rx) = candidate;
    const double secrecy = secrecy_report(scenario, trial, state, link).sum;
    if (secrecy >= params.penalty)
        throw std::logic_error("secrecy rate reached the penalty factor; raise eta");
    return secrecy - params.penalty * violation_count(candidate, params.min_distance);
}

PsoResult pso_optimize(const RVec &initial, const FitnessFn &fitness, const PsoParams &params, std::uint64_t seed)
{
    params.validate();
    const Eigen::Index dim = initial.size();
    const int n_particles = params.particles;
    const double hw = params.half_width;

    std::vector<RVec> pos(n_particles), vel(n_particles), personal(n_particles);
    std::vector<double> personal_fit(n_particles);

    for (int i = 0; i < n_particles; ++i)
    {
        Engine rng = make_engine(derive_seed(seed, {static_cast<std::uint64_t>(i), 0}));
        std::uniform_real_distribution<double> in_region(-hw, hw);
        std::uniform_real_distribution<double> speed(-hw / 2.0, hw / 2.0);
        pos[i].resize(dim);
        vel[i].resize(dim);
        for (Eigen::Index d = 0; d < dim; ++d)
        {
            pos[i](d) = in_region(rng);
            vel[i](d) = speed(rng);
        }
        if (i == 0)
            pos[i] = clamp_to_region(initial, hw);
        personal[i] = pos[i];
        personal_fit[i] = fitness(pos[i]);
    }

    int leader = 0;
    for (int i = 1; i < n_particles; ++i)
        if (personal_fit[i] > personal_fit[leader])
            leader = i;
    RVec global = personal[leader];
    double global_fit = personal_fit[leader];

    PsoResult result;
    result.history.reserve(params.iterations + 1);
    result.history.push_back(global_fit);

    for (int k = 1; k <= params.iterations; ++k)
    {
        const double omega = inertia_weight(k, params.iterations, params.omega_min, params.omega_max);
        for (int i = 0; i < n_particles; ++i)
        {
            Engine rng = make_engine(derive_seed(seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)}));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (Eigen::Index d = 0; d < dim; ++d)
            {
                const double e1 = unit(rng);
                const double e2 = unit(rng);
                vel[i](d) = omega * vel[i](d) + params.c1 * e1 * (personal[i](d) - pos[i](d)) +
                            params.c2 * e2 * (global(d) - pos[i](d));
            }
            pos[i] = clamp_to_region(pos[i] + vel[i], hw);
            const double f = fitness(pos[i]);
            if (f > personal_fit[i])
            {
                personal_fit[i] = f;
                personal[i] = pos[i];
            }
        }
        // Synchronous global update; strict improvement keeps the earliest best under ties.
        for (int i = 0; i < n_particles; ++i)
            if (personal_fit[i] > global_fit)
            {
                global_fit = personal_fit[i];
                global = personal[i];
            }
        result.history.push_back(global_fit);
    }

    result.best = global;
    result.fitness = global_fit;
    result.feasible = violation_count(global, params.min_distance) == 0;
    return result;
}

PositionResult optimize_positions(const AntennaLayout &layout, const Scenario &scenario, const BeamformingState &state,
                                  const LinkParams &link, const PsoParams &params, std::uint64_t seed)
{
    PositionResult out;
    out.layout = layout;

    out.transmit = pso_optimize(
        layout.tx,
        [&](const RVec &x) { return position_fitness(x, ArraySide::transmit, out.layout, scenario, state, link, params); },
        params, derive_seed(seed, {salt::pso_tx}));
    out.layout.tx = out.transmit.best;

    out.receive = pso_optimize(
        layout.rx,
        [&](const RVec &x) { return position_fitness(x, ArraySide::receive, out.layout, scenario, state, link, params); },
        params, derive_seed(seed, {salt::pso_rx}));
    out.layout.rx = out.receive.best;

    out.feasible = out.transmit.feasible && out.receive.feasible;
    return out;
}

} // namespace mafd

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

#ifndef MAFD_ANTENNA_POSITIONING_HPP
#define MAFD_ANTENNA_POSITIONING_HPP

#include "mafd/config.hpp"
#include "mafd/link_metrics.hpp"
#include "mafd/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mafd
{

struct PsoParams
{
    int particles = 40;
    int iterations = 40;
    double c1 = 1.4;
    double c2 = 1.4;
    double omega_min = 0.4;
    double omega_max = 0.9;
    double penalty = 100.0;
    double half_width = 0.05; // A / 2, meters
    double min_distance = 0.025;

    static PsoParams from(const SystemConfig &cfg);
    void validate() const;
};

// omega_max - (omega_max - omega_min) * k / K
double inertia_weight(int k, int total, double omega_min, double omega_max);

// Clamps every coordinate into [-half_width, half_width].
RVec clamp_to_region(const RVec &coords, double half_width);

// Number of antennas with at least one other antenna closer than `min_distance`.
int violation_count(const RVec &coords, double min_distance);

// Smallest pairwise distance; +inf for fewer than two antennas.
double min_pairwise_distance(const RVec &coords);

enum class ArraySide
{
    transmit,
    receive,
};

// Clamped sum secrecy rate at `candidate` positions for `side`, with the other side and all
// beamformers fixed, minus penalty * violation_count. Throws std::logic_error if the secrecy
// rate reaches the penalty, because infeasible layouts would then no longer rank below feasible ones.
double position_fitness(const RVec &candidate, ArraySide side, const AntennaLayout &layout, const Scenario &scenario,
                        const BeamformingState &state, const LinkParams &link, const PsoParams &params);

using FitnessFn = std::function<double(const RVec &)>;

struct PsoResult
{
    RVec best;
    double fitness = 0.0;
    bool feasible = false;
    std::vector<double> history; // global-best fitness after initialization and after each iteration
};

// Particle 0 starts at `initial` (warm start), the rest uniformly in the region with velocities in
// [-A/4, A/4]. The random factors of particle i at iteration k come from a stream keyed by
// (seed, i, k), so the result is a pure function of the inputs.
PsoResult pso_optimize(const RVec &initial, const FitnessFn &fitness, const PsoParams &params, std::uint64_t seed);

struct PositionResult
{
    AntennaLayout layout;
    bool feasible = false;
    PsoResult transmit;
    PsoResult receive;
};

// Transmit positions first (receive fixed), then receive positions with the new transmit layout.
PositionResult optimize_positions(const AntennaLayout &layout, const Scenario &scenario, const BeamformingState &state,
                                  const LinkParams &link, const PsoParams &params, std::uint64_t seed);

} // namespace mafd

#endif

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

#ifndef MAFD_AO_ORCHESTRATOR_HPP
#define MAFD_AO_ORCHESTRATOR_HPP

#include "mafd/antenna_positioning.hpp"
#include "mafd/config.hpp"
#include "mafd/link_metrics.hpp"
#include "mafd/transmit_beamformer.hpp"
#include "mafd/types.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mafd
{

enum class Scheme
{
    ma_fd_pso,      // MA-FD-PSO: full alternating optimization
    ma_fd_pso_noan, // MA-FD-PSO-NoAN: V pinned to zero
    fpa_fd,         // FPA-FD: half-wavelength grid, positions not optimized
    ma_fd_rp,       // MA-FD-RP: one random feasible layout, positions not optimized
    ma_hd_pso,      // MA-HD-PSO: time-division half duplex
};

inline constexpr std::array<Scheme, 5> all_schemes{Scheme::ma_fd_pso, Scheme::ma_fd_pso_noan, Scheme::fpa_fd,
                                                   Scheme::ma_fd_rp, Scheme::ma_hd_pso};

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name); // throws ConfigError on unknown ids

// A stage of the alternating loop failed; what() names the stage.
class StageError : public std::runtime_error
{
public:
    StageError(std::string stage, const std::string &what)
        : std::runtime_error(stage + " stage failed: " + what), stage_(std::move(stage)) {}
    const std::string &stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct AoConfig
{
    int max_outer = 15;      // C
    double tolerance = 1e-3; // epsilon_2, relative SSR increment
    Scheme scheme = Scheme::ma_fd_pso;
    bool optimize_positions = true;
    bool artificial_noise = true;
    double budget = 0.1; // P_B
    LinkParams link;
    PsoParams pso;
    ScaOptions sca;
    double wavelength = 0.05;

    static AoConfig from(const SystemConfig &cfg, Scheme scheme = Scheme::ma_fd_pso);
};

struct AoIteration
{
    int index = 0;
    double ssr = 0.0;
    double positions_ms = 0.0;
    double transmit_ms = 0.0;
    double receive_ms = 0.0;
    int sca_iterations = 0;
    std::vector<double> sca_history;
    double relaxed_objective = 0.0;   // P - Q at the SCA output
    double extracted_objective = 0.0; // unclamped SSR after rank-1 extraction
    double tightness = 0.0;           // max over W, V of lambda_2 / lambda_1
    bool positions_feasible = true;
};

struct AoTrace
{
    std::vector<double> ssr; // R(0), R(1), ...
    std::vector<AoIteration> iterations;
    std::vector<AntennaLayout> layouts;
    std::vector<BeamformingState> states;
    std::string termination;
    std::vector<std::string> events;
};

struct InitialState
{
    AntennaLayout layout;
    BeamformingState state;
};

struct AoResult
{
    AntennaLayout layout;
    BeamformingState state;
    RateReport report;
    AoTrace trace;
    bool feasible = true;
};

// Uniform positions in the square region, redrawn until all pairwise distances are >= D.
AntennaLayout random_feasible_layout(int n_tx, int n_rx, double half_width, double min_distance, std::uint64_t seed,
                                     int max_attempts = 100000);

// Half-wavelength grid centered in each region: square grid for square N, else a line when it fits,
// else rows of ceil(sqrt(N)) antennas. Coordinates outside the region are clamped.
RVec fpa_positions(int n, double wavelength, double half_width);

// Layout per scheme, w^(0) matched to h_BD with power P_B/2, V^(0) = P_B/(2 N_t) I (zero without
// artificial noise), and w_r^(0) matched to h_UB.
InitialState initialize_state(const Scenario &scenario, const SystemConfig &cfg, const AoConfig &ao,
                              std::uint64_t seed);

// Outer loop: positions, then (W, V), then w_r, then the SSR update. A stage result that lowers
// the SSR by more than 1e-9 is discarded in favor of the incumbent.
AoResult alternating_optimize(const Scenario &scenario, const AoConfig &ao, const InitialState &init,
                              std::uint64_t seed);

struct ConstraintReport
{
    double receive_norm_error = 0.0; // | ||w_r|| - 1 |
    double min_eigenvalue = 0.0;     // over W and V
    double power_used = 0.0;         // Tr(W + V)
    double min_distance_tx = 0.0;
    double min_distance_rx = 0.0;
    double region_excess = 0.0; // max(|coord|) - A/2, <= 0 when inside

    bool satisfied(double budget, double min_distance) const;
};

ConstraintReport check_constraints(const AntennaLayout &layout, const BeamformingState &state, double half_width);

struct ExperimentRecord
{
    std::string scheme;
    std::string sweep_name;
    double sweep_value = 0.0;
    std::uint64_t seed = 0;
    double ssr = 0.0;
    double r_u = 0.0;
    double r_d = 0.0;
    int iters = 0;
    double tightness = 0.0;
    bool feasible = true;
    double ms = 0.0;

    // Not part of the CSV.
    double rank_one_gap = 0.0; // |relaxed - extracted| / |relaxed| at the last transmit stage
    bool rank_one_flag = false;
};

struct SchemeRun
{
    ExperimentRecord record;
    AoResult result;
};

SchemeRun run_scheme_detailed(Scheme scheme, const Scenario &scenario, const SystemConfig &cfg, std::uint64_t seed);
ExperimentRecord run_scheme(Scheme scheme, const Scenario &scenario, const SystemConfig &cfg, std::uint64_t seed);

} // namespace mafd

#endif

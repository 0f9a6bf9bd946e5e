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

#ifndef MAFD_EXPERIMENT_HPP
#define MAFD_EXPERIMENT_HPP

#include "mafd/ao_orchestrator.hpp"
#include "mafd/config.hpp"
#include "mafd/types.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace mafd
{

struct RunOptions
{
    bool record_timing = false; // off keeps the CSV byte-reproducible (ms column written as 0)
    unsigned threads = 0;       // 0: hardware concurrency
    std::ostream *trace = nullptr; // JSON-lines AO trace, one object per outer iteration
};

// Scenario seed of one trial. Shared by every scheme and every sweep point, so all comparisons
// (across schemes and along the sweep axis) are paired.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

struct SweepSpec
{
    std::string name;
    std::vector<double> values;
    std::function<void(SystemConfig &, double)> apply;
};

std::vector<ExperimentRecord> run_sweep(const SystemConfig &base, const SweepSpec &sweep,
                                        const std::vector<Scheme> &schemes, int trials, const RunOptions &opts = {});

// A / lambda grid.
std::vector<ExperimentRecord> sweep_region_size(const SystemConfig &base, const std::vector<double> &region_wavelengths,
                                                const std::vector<Scheme> &schemes, int trials,
                                                const RunOptions &opts = {});

// rho grid in dB; each entry of `power_bs_dbm` adds one curve (empty: keep the configured P_B).
std::vector<ExperimentRecord> sweep_sic(const SystemConfig &base, const std::vector<double> &rho_db,
                                        const std::vector<double> &power_bs_dbm, const std::vector<Scheme> &schemes,
                                        int trials, const RunOptions &opts = {});

// N_t = N_r = N grid.
std::vector<ExperimentRecord> sweep_antennas(const SystemConfig &base, const std::vector<int> &antennas,
                                             const std::vector<Scheme> &schemes, int trials,
                                             const RunOptions &opts = {});

inline constexpr const char *csv_header = "scheme,sweep_name,sweep_value,seed,ssr,r_u,r_d,iters,tightness,feasible,ms";

void write_records(const std::vector<ExperimentRecord> &records, std::ostream &out);
void write_records(const std::vector<ExperimentRecord> &records, const std::string &path);
std::vector<ExperimentRecord> read_records(std::istream &in);

// Hash over every number of a scenario, for pairing checks.
std::uint64_t scenario_fingerprint(const Scenario &s);

std::string scenario_to_json(const Scenario &s);
std::string trace_to_jsonl(const ExperimentRecord &rec, const AoTrace &trace);

} // namespace mafd

#endif

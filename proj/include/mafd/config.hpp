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

#ifndef MAFD_CONFIG_HPP
#define MAFD_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace mafd
{

// All physical and algorithmic parameters in linear units (watts, linear ratios, meters).
// Defaults follow the reference parameter table, except for the iteration budgets which
// are reduced for desk-scale runs; see full_budget().
struct SystemConfig
{
    int n_tx = 4;
    int n_rx = 4;
    double region_wavelengths = 2.0; // side A of each square moving region, in wavelengths
    int paths = 3;                   // L, used for every channel
    double wavelength = 0.05;        // meters
    double min_distance = 0.025;     // D, meters

    double path_loss_1m = 1e-4; // beta
    double path_loss_exponent = 2.8;
    double noise_bs = 1e-12;
    double noise_dl = 1e-12;
    double noise_eve = 1e-12;
    double sic = 1e-10; // rho
    double power_bs = 0.1;
    double power_ul = 0.1;

    double sca_tolerance = 1e-3; // epsilon_1
    double ao_tolerance = 1e-3;  // epsilon_2
    int particles = 40;          // I
    int sca_iterations = 30;     // M
    int pso_iterations = 40;     // K
    int ao_iterations = 15;      // C
    double penalty = 100.0;      // eta
    double omega_min = 0.4;
    double omega_max = 0.9;
    double c1 = 1.4;
    double c2 = 1.4;

    double cell_radius = 50.0;
    double min_node_distance = 1.0;

    int trials = 20;
    std::uint64_t seed = 1;

    double region_side() const { return region_wavelengths * wavelength; }

    // Throws ConfigError naming the first offending field.
    void validate() const;

    // Switches I, M, K, C to the reference budgets of 100.
    void full_budget();
};

// Unit helpers for the config boundary.
double db_to_linear(double db);
double dbm_to_watts(double dbm);
double linear_to_db(double x);
double watts_to_dbm(double w);

// Applies one `key = value` assignment. Power keys accept `dBm`/`W` suffixes, ratio keys
// accept `dB`, and length keys accept a `lambda` suffix.
void apply_setting(SystemConfig &cfg, const std::string &key, const std::string &value);

// Parses `key = value` lines with `#` comments on top of `base`, then validates.
SystemConfig parse_config(std::istream &in, SystemConfig base = {});
SystemConfig parse_config_file(const std::string &path, SystemConfig base = {});

// Applies `key=value` overrides (as given on the command line), then validates.
SystemConfig apply_overrides(SystemConfig cfg, const std::vector<std::string> &assignments);

} // namespace mafd

#endif

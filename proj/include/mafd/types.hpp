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

#ifndef MAFD_TYPES_HPP
#define MAFD_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mafd
{

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Invalid or inconsistent configuration (unknown key, out-of-range value, dimension mismatch).
class ConfigError : public std::invalid_argument
{
public:
    explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
    ConfigError(const std::string &key, const std::string &what)
        : std::invalid_argument(key + ": " + what), key_(key) {}
    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

// A channel vector with no usable direction (e.g. an all-zero uplink channel).
class DegenerateChannelError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Elevation/azimuth pairs, one per propagation path. All angles in [0, pi].
struct PathAngles
{
    std::vector<double> elevation;
    std::vector<double> azimuth;

    std::size_t size() const { return elevation.size(); }
};

// Path responses at the region reference points.
struct PathGains
{
    CMat sigma; // SI path response, L_r x L_t
    CVec g_ub;  // UL user -> receive origin
    CVec f_bd;  // transmit origin -> DL user
    CVec f_be;  // transmit origin -> Eve
    cplx h_ud{0.0, 0.0};
    cplx h_ue{0.0, 0.0};
};

struct Scenario
{
    PathAngles si_tx, si_rx, ub_rx, bd_tx, be_tx;
    PathGains gains;

    // Node positions relative to the BS (meters), kept for dumps.
    Eigen::Vector2d ul_user{0.0, 0.0}, dl_user{0.0, 0.0}, eve{0.0, 0.0};
    double d_bd = 1.0, d_be = 1.0, d_ub = 1.0, d_ud = 1.0, d_ue = 1.0;
    double wavelength = 0.05;
};

// Stacked 2D antenna coordinates [x1, y1, x2, y2, ...] in local region coordinates (meters).
struct AntennaLayout
{
    RVec tx;
    RVec rx;

    int n_tx() const { return static_cast<int>(tx.size() / 2); }
    int n_rx() const { return static_cast<int>(rx.size() / 2); }
};

struct BeamformingState
{
    CVec receive; // w_r, unit norm
    CMat info;    // W, information covariance
    CMat noise;   // V, artificial-noise covariance
};

// Channels evaluated at one antenna layout.
struct ChannelSet
{
    CMat si; // N_r x N_t
    CVec ub; // N_r
    CVec bd; // N_t
    CVec be; // N_t
    cplx ud{0.0, 0.0};
    cplx ue{0.0, 0.0};
};

inline Eigen::Vector2d position(const RVec &coords, Eigen::Index n)
{
    return {coords(2 * n), coords(2 * n + 1)};
}

} // namespace mafd

#endif

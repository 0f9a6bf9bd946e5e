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

#ifndef MAFD_CHANNEL_MODEL_HPP
#define MAFD_CHANNEL_MODEL_HPP

#include "mafd/config.hpp"
#include "mafd/types.hpp"

#include <cstdint>

namespace mafd
{

// Phase of one path at `pos` relative to the region origin:
// 2*pi * [sin(el) cos(az), cos(el)] . pos / wavelength.
double phase_difference(const Eigen::Vector2d &pos, double elevation, double azimuth, double wavelength);

// Unit-modulus vector of per-path phase factors at one antenna position.
CVec field_response_vector(const Eigen::Vector2d &pos, const PathAngles &angles, double wavelength);

// L x N matrix whose n-th column is the field-response vector of antenna n.
// `coords` holds the stacked positions [x1, y1, ..., xN, yN].
CMat field_response_matrix(const RVec &coords, const PathAngles &angles, double wavelength);

// H_SI = F_SI(r)^H * Sigma * G_SI(t), N_r x N_t.
CMat si_channel(const RVec &tx, const RVec &rx, const Scenario &scenario);

enum class LinkDirection
{
    receive,  // SIMO uplink: F(r)^H g
    transmit, // MISO downlink: G(t)^H f
};

// Channel vector of one side of the BS towards a single-antenna node.
CVec link_channel(const RVec &coords, const CVec &gains, const PathAngles &angles, double wavelength,
                  LinkDirection direction);

// All channels at one layout.
ChannelSet evaluate_channels(const Scenario &scenario, const AntennaLayout &layout);

// Draws one random channel realization. Pure function of (config, seed).
Scenario sample_scenario(const SystemConfig &config, std::uint64_t seed);

} // namespace mafd

#endif

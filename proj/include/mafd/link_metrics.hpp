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

#ifndef MAFD_LINK_METRICS_HPP
#define MAFD_LINK_METRICS_HPP

#include "mafd/config.hpp"
#include "mafd/types.hpp"

namespace mafd
{

enum class DuplexMode
{
    full,
    // Two equal time slots. Neither slot sees the other direction's interference or
    // masking, and every secrecy rate is halved.
    half,
};

struct LinkParams
{
    double power_ul = 0.1;
    double sic = 1e-10;
    double noise_bs = 1e-12;
    double noise_dl = 1e-12;
    double noise_eve = 1e-12;
    DuplexMode mode = DuplexMode::full;

    static LinkParams from(const SystemConfig &cfg, DuplexMode mode = DuplexMode::full);
};

struct RateReport
{
    double gamma_u = 0.0;
    double gamma_d = 0.0;
    double gamma_ue = 0.0; // Eve, uplink interception
    double gamma_de = 0.0; // Eve, downlink interception
    double r_u = 0.0;      // clamped at zero, bits/s/Hz
    double r_d = 0.0;
    double sum = 0.0;      // r_u + r_d
    double unclamped = 0.0;
};

// Covariance (trace) forms, so relaxed covariances of any rank can be evaluated.
double uplink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p);
double downlink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p);
double eve_uplink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p);
double eve_downlink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p);

RateReport secrecy_report(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p);
RateReport secrecy_report(const Scenario &s, const AntennaLayout &layout, const BeamformingState &bf,
                          const LinkParams &p);

// Re Tr(X * h h^H) = h^H X h for Hermitian X.
double quadratic_form(const CMat &x, const CVec &h);

} // namespace mafd

#endif

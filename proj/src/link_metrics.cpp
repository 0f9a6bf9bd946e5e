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

#include "mafd/link_metrics.hpp"
#include "mafd/channel_model.hpp"

#include <algorithm>
#include <cmath>

namespace mafd
{

LinkParams LinkParams::from(const SystemConfig &cfg, DuplexMode mode)
{
    return {cfg.power_ul, cfg.sic, cfg.noise_bs, cfg.noise_dl, cfg.noise_eve, mode};
}

double quadratic_form(const CMat &x, const CVec &h)
{
    return (h.adjoint() * x * h)(0, 0).real();
}

double uplink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p)
{
    const CVec &wr = bf.receive;
    const double signal = std::norm(wr.dot(ch.ub)) * p.power_ul;
    double si = 0.0;
    if (p.mode == DuplexMode::full && p.sic > 0.0)
    {
        const CVec leak = ch.si.adjoint() * wr; // H_SI^H w_r
        si = p.sic * quadratic_form(bf.info + bf.noise, leak);
    }
    return signal / (si + wr.squaredNorm() * p.noise_bs);
}

double downlink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p)
{
    const double co_channel = p.mode == DuplexMode::full ? std::norm(ch.ud) * p.power_ul : 0.0;
    return quadratic_form(bf.info, ch.bd) / (quadratic_form(bf.noise, ch.bd) + co_channel + p.noise_dl);
}

double eve_uplink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p)
{
    const double masking = p.mode == DuplexMode::full ? quadratic_form(bf.info + bf.noise, ch.be) : 0.0;
    return std::norm(ch.ue) * p.power_ul / (masking + p.noise_eve);
}

double eve_downlink_sinr(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p)
{
    const double ul_leak = p.mode == DuplexMode::full ? std::norm(ch.ue) * p.power_ul : 0.0;
    return quadratic_form(bf.info, ch.be) / (quadratic_form(bf.noise, ch.be) + ul_leak + p.noise_eve);
}

RateReport secrecy_report(const ChannelSet &ch, const BeamformingState &bf, const LinkParams &p)
{
    RateReport r;
    r.gamma_u = uplink_sinr(ch, bf, p);
    r.gamma_d = downlink_sinr(ch, bf, p);
    r.gamma_ue = eve_uplink_sinr(ch, bf, p);
    r.gamma_de = eve_downlink_sinr(ch, bf, p);

    const double share = p.mode == DuplexMode::half ? 0.5 : 1.0;
    const double gap_u = share * (std::log2(1.0 + r.gamma_u) - std::log2(1.0 + r.gamma_ue));
    const double gap_d = share * (std::log2(1.0 + r.gamma_d) - std::log2(1.0 + r.gamma_de));
    r.r_u = std::max(gap_u, 0.0);
    r.r_d = std::max(gap_d, 0.0);
    r.sum = r.r_u + r.r_d;
    r.unclamped = gap_u + gap_d;
    return r;
}

RateReport secrecy_report(const Scenario &s, const AntennaLayout &layout, const BeamformingState &bf,
                          const LinkParams &p)
{
    return secrecy_report(evaluate_channels(s, layout), bf, p);
}

} // namespace mafd

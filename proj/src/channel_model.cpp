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

#include "mafd/channel_model.hpp"
#include "mafd/rng.hpp"

#include <cmath>
#include <numbers>

namespace mafd
{

double phase_difference(const Eigen::Vector2d &pos, double elevation, double azimuth, double wavelength)
{
    const double sx = std::sin(elevation) * std::cos(azimuth);
    const double sy = std::cos(elevation);
    return 2.0 * std::numbers::pi * (sx * pos.x() + sy * pos.y()) / wavelength;
}

CVec field_response_vector(const Eigen::Vector2d &pos, const PathAngles &angles, double wavelength)
{
    const auto n_paths = static_cast<Eigen::Index>(angles.size());
    CVec out(n_paths);
    for (Eigen::Index l = 0; l < n_paths; ++l)
        out(l) = std::polar(1.0, phase_difference(pos, angles.elevation[l], angles.azimuth[l], wavelength));
    return out;
}

CMat field_response_matrix(const RVec &coords, const PathAngles &angles, double wavelength)
{
    if (coords.size() % 2 != 0)
        throw ConfigError("antenna coordinate vector must have even length");
    const Eigen::Index n = coords.size() / 2;
    CMat out(static_cast<Eigen::Index>(angles.size()), n);
    for (Eigen::Index i = 0; i < n; ++i)
        out.col(i) = field_response_vector(position(coords, i), angles, wavelength);
    return out;
}

CMat si_channel(const RVec &tx, const RVec &rx, const Scenario &scenario)
{
    const CMat &sigma = scenario.gains.sigma;
    if (sigma.rows() != static_cast<Eigen::Index>(scenario.si_rx.size()) ||
        sigma.cols() != static_cast<Eigen::Index>(scenario.si_tx.size()))
        throw ConfigError("SI path-response matrix does not match the SI path counts");
    const CMat g = field_response_matrix(tx, scenario.si_tx, scenario.wavelength);
    const CMat f = field_response_matrix(rx, scenario.si_rx, scenario.wavelength);
    return f.adjoint() * sigma * g;
}

CVec link_channel(const RVec &coords, const CVec &gains, const PathAngles &angles, double wavelength,
                  LinkDirection)
{
    // Both directions reduce to (field-response matrix)^H * path gains.
    if (gains.size() != static_cast<Eigen::Index>(angles.size()))
        throw ConfigError("path gain vector does not match the number of path angles");
    return field_response_matrix(coords, angles, wavelength).adjoint() * gains;
}

ChannelSet evaluate_channels(const Scenario &s, const AntennaLayout &layout)
{
    ChannelSet c;
    c.si = si_channel(layout.tx, layout.rx, s);
    c.ub = link_channel(layout.rx, s.gains.g_ub, s.ub_rx, s.wavelength, LinkDirection::receive);
    c.bd = link_channel(layout.tx, s.gains.f_bd, s.bd_tx, s.wavelength, LinkDirection::transmit);
    c.be = link_channel(layout.tx, s.gains.f_be, s.be_tx, s.wavelength, LinkDirection::transmit);
    c.ud = s.gains.h_ud;
    c.ue = s.gains.h_ue;
    return c;
}

namespace
{

PathAngles draw_angles(Engine &rng, int n_paths)
{
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    PathAngles a;
    a.elevation.resize(n_paths);
    a.azimuth.resize(n_paths);
    for (int l = 0; l < n_paths; ++l)
    {
        a.elevation[l] = angle(rng);
        a.azimuth[l] = angle(rng);
    }
    return a;
}

cplx draw_cscg(Engine &rng, double variance)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

CVec draw_cscg_vector(Engine &rng, int n, double variance)
{
    CVec v(n);
    for (int i = 0; i < n; ++i)
        v(i) = draw_cscg(rng, variance);
    return v;
}

Eigen::Vector2d draw_in_disk(Engine &rng, double radius)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace

Scenario sample_scenario(const SystemConfig &config, std::uint64_t seed)
{
    config.validate();
    Engine rng = make_engine(derive_seed(seed, {salt::scenario}));
    const int L = config.paths;

    Scenario s;
    s.wavelength = config.wavelength;

    s.ul_user = draw_in_disk(rng, config.cell_radius);
    s.dl_user = draw_in_disk(rng, config.cell_radius);
    s.eve = draw_in_disk(rng, config.cell_radius);
    const double floor_d = config.min_node_distance;
    s.d_ub = std::max(s.ul_user.norm(), floor_d);
    s.d_bd = std::max(s.dl_user.norm(), floor_d);
    s.d_be = std::max(s.eve.norm(), floor_d);
    s.d_ud = std::max((s.ul_user - s.dl_user).norm(), floor_d);
    s.d_ue = std::max((s.ul_user - s.eve).norm(), floor_d);

    s.si_tx = draw_angles(rng, L);
    s.si_rx = draw_angles(rng, L);
    s.ub_rx = draw_angles(rng, L);
    s.bd_tx = draw_angles(rng, L);
    s.be_tx = draw_angles(rng, L);

    auto path_loss = [&](double d) { return config.path_loss_1m * std::pow(d, -config.path_loss_exponent); };

    s.gains.sigma = CMat::Zero(L, L);
    for (int l = 0; l < L; ++l)
        s.gains.sigma(l, l) = draw_cscg(rng, 1.0 / L);
    s.gains.g_ub = draw_cscg_vector(rng, L, path_loss(s.d_ub) / L);
    s.gains.f_bd = draw_cscg_vector(rng, L, path_loss(s.d_bd) / L);
    s.gains.f_be = draw_cscg_vector(rng, L, path_loss(s.d_be) / L);
    s.gains.h_ud = draw_cscg(rng, path_loss(s.d_ud));
    s.gains.h_ue = draw_cscg(rng, path_loss(s.d_ue));
    return s;
}

} // namespace mafd

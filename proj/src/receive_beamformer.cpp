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

#include "mafd/receive_beamformer.hpp"

namespace mafd
{

CMat interference_covariance(const CMat &h_si, const CMat &info, const CMat &noise, double sic, double noise_bs)
{
    CMat a = sic * (h_si * (info + noise) * h_si.adjoint());
    a = 0.5 * (a + a.adjoint()).eval();
    a.diagonal().array() += noise_bs;
    return a;
}

CVec optimal_receive_beamformer(const CMat &interference, const CVec &h_ub)
{
    if (interference.rows() != h_ub.size() || interference.cols() != h_ub.size())
        throw ConfigError("interference covariance does not match the receive channel dimension");
    if (h_ub.norm() < 1e-15)
        throw DegenerateChannelError("uplink channel is zero; no receive direction exists");

    Eigen::LLT<CMat> llt(interference);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("interference covariance is not positive definite");
    CVec x = llt.solve(h_ub);
    return x / x.norm();
}

} // namespace mafd

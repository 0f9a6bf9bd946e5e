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

#ifndef MAFD_RECEIVE_BEAMFORMER_HPP
#define MAFD_RECEIVE_BEAMFORMER_HPP

#include "mafd/types.hpp"

namespace mafd
{

// A = rho * H_SI (W + V) H_SI^H + sigma_B^2 I, symmetrized to scrub round-off asymmetry.
CMat interference_covariance(const CMat &h_si, const CMat &info, const CMat &noise, double sic, double noise_bs);

// SINR-optimal unit-norm receive beamformer A^{-1} h / ||A^{-1} h||. The system is solved
// with a Cholesky factorization instead of forming the inverse.
// Throws DegenerateChannelError when ||h_ub|| < 1e-15.
CVec optimal_receive_beamformer(const CMat &interference, const CVec &h_ub);

} // namespace mafd

#endif

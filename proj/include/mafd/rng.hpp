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

#ifndef MAFD_RNG_HPP
#define MAFD_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mafd
{

// splitmix64 finalizer, used to derive independent stream seeds from structured keys.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t h = mix64(base);
    for (auto k : keys)
        h = mix64(h ^ mix64(k + 0x632BE59BD9B4E019ULL));
    return h;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Engine(seq);
}

// Stream salts, so scenario draws and algorithm randomness never share a stream.
namespace salt
{
inline constexpr std::uint64_t scenario = 0x5C3A;
inline constexpr std::uint64_t layout = 0x1A70;
inline constexpr std::uint64_t pso_tx = 0x7150;
inline constexpr std::uint64_t pso_rx = 0x8150;
} // namespace salt

} // namespace mafd

#endif

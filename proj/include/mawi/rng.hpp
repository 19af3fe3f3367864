// SPDX-License-Identifier: Apache-2.0
//
// mawi - simulation and optimization toolkit for movable-antenna wireless systems
// Copyright (C) 2026 the mawi authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file
// except in compliance with the License. You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the
// License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND,
// either express or implied. See the License for the specific language governing permissions
// and limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mawi
{

// SplitMix64 finalizer (Steele, Lea, Flood; "Fast splittable pseudorandom number generators").
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Counter-based seed derivation. Children for distinct (stream, index) pairs are
// decorrelated and stable: adding more streams or indices later never changes the
// seeds that were already handed out.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0)
{
    std::uint64_t h = mix64(master ^ 0xA0761D6478BD642Full);
    h = mix64(h ^ stream);
    h = mix64(h ^ index);
    return h;
}

using RngEngine = std::mt19937_64;

inline RngEngine make_engine(std::uint64_t seed)
{
    return RngEngine(seed);
}

// Circularly symmetric complex Gaussian with E|z|^2 = variance
// (real and imaginary parts i.i.d. N(0, variance/2)).
inline std::complex<double> draw_cscg(RngEngine &rng, double variance)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5 * variance));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

} // namespace mawi

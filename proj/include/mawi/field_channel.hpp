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

#include <complex>
#include <cstdint>
#include <vector>

#include <armadillo>

#include "mawi/geometry.hpp"

namespace mawi
{

using cxd = std::complex<double>;

enum class PrmStyle
{
    Full,     // dense L_r x L_t coupling
    Diagonal, // one-to-one Tx/Rx path pairing (geometric channel)
    Los       // single line-of-sight path
};

// Multipath geometry and gains defining a channel field over continuous antenna
// positions. Path directions stay fixed while antennas move (far-field model);
// only per-path phases change with position.
class PathSet
{
  public:
    // prm has shape L_r x L_t: entry (i, j) couples Rx path i with Tx path j.
    PathSet(std::vector<PathAngles> tx_paths, std::vector<PathAngles> rx_paths,
            arma::cx_mat prm, double wavelength);

    const std::vector<PathAngles> &tx_paths() const { return tx_paths_; }
    const std::vector<PathAngles> &rx_paths() const { return rx_paths_; }
    const arma::cx_mat &prm() const { return prm_; }
    double wavelength() const { return wavelength_; }
    std::size_t n_tx_paths() const { return tx_paths_.size(); }
    std::size_t n_rx_paths() const { return rx_paths_.size(); }

    // Unit wave vectors cached at construction.
    const std::vector<WaveVector> &tx_wave_vectors() const { return tx_k_; }
    const std::vector<WaveVector> &rx_wave_vectors() const { return rx_k_; }

  private:
    std::vector<PathAngles> tx_paths_;
    std::vector<PathAngles> rx_paths_;
    arma::cx_mat prm_;
    double wavelength_;
    std::vector<WaveVector> tx_k_;
    std::vector<WaveVector> rx_k_;
};

// Per-path phase factors exp(j(2*pi/lambda) k^T p) at a Tx / Rx position.
arma::cx_vec tx_frv(const PathSet &ps, const Position3D &t);
arma::cx_vec rx_frv(const PathSet &ps, const Position3D &r);

// h(t, r) = f(r)^H * Sigma * g(t)
cxd channel_response(const PathSet &ps, const Position3D &t, const Position3D &r);

// Entry (n, m) = channel_response(ps, tx_positions[m], rx_positions[n]).
arma::cx_mat mimo_channel(const PathSet &ps, const std::vector<Position3D> &tx_positions,
                          const std::vector<Position3D> &rx_positions);

struct RandomPathSetSpec
{
    std::size_t l_tx = 1;
    std::size_t l_rx = 1;
    PrmStyle prm_style = PrmStyle::Full;
    double gain_variance = 1.0;
    double wavelength = 0.05;
};

// Angles uniform over their ranges, gains i.i.d. circularly symmetric complex
// Gaussian (off-diagonal exactly zero for the diagonal style). Deterministic per seed.
PathSet random_pathset(const RandomPathSetSpec &spec, std::uint64_t seed);

// A channel field: the pathset plus both movement regions.
struct ChannelField
{
    ChannelField(PathSet ps, MovingRegion tx, MovingRegion rx);

    PathSet pathset;
    MovingRegion tx_region;
    MovingRegion rx_region;
};

} // namespace mawi

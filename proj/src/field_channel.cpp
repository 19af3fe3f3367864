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

#include "mawi/field_channel.hpp"

#include <string>
#include <utility>

namespace mawi
{

PathSet::PathSet(std::vector<PathAngles> tx_paths, std::vector<PathAngles> rx_paths,
                 arma::cx_mat prm, double wavelength)
    : tx_paths_(std::move(tx_paths)), rx_paths_(std::move(rx_paths)), prm_(std::move(prm)),
      wavelength_(wavelength)
{
    if (tx_paths_.empty() || rx_paths_.empty())
        throw config_error("a pathset needs at least one Tx and one Rx path");
    if (prm_.n_rows != rx_paths_.size() || prm_.n_cols != tx_paths_.size())
        throw dimension_error("path-response matrix must be L_r x L_t, got " +
                              std::to_string(prm_.n_rows) + "x" + std::to_string(prm_.n_cols));
    if (!prm_.is_finite())
        throw config_error("path-response matrix entries must be finite");
    if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_))
        throw config_error("wavelength must be positive and finite");
    tx_k_.reserve(tx_paths_.size());
    for (const auto &a : tx_paths_)
        tx_k_.push_back(wave_vector(a)); // validates angle ranges
    rx_k_.reserve(rx_paths_.size());
    for (const auto &a : rx_paths_)
        rx_k_.push_back(wave_vector(a));
}

static arma::cx_vec frv_from(const std::vector<WaveVector> &ks, double wavelength,
                             const Position3D &p)
{
    if (!is_finite(p))
        throw domain_error("antenna position must be finite");
    const double scale = 2.0 * pi / wavelength;
    arma::cx_vec v(ks.size());
    for (std::size_t l = 0; l < ks.size(); ++l)
    {
        const double phase = scale * (ks[l].x * p.x + ks[l].y * p.y + ks[l].z * p.z);
        v[l] = std::polar(1.0, phase);
    }
    return v;
}

arma::cx_vec tx_frv(const PathSet &ps, const Position3D &t)
{
    return frv_from(ps.tx_wave_vectors(), ps.wavelength(), t);
}

arma::cx_vec rx_frv(const PathSet &ps, const Position3D &r)
{
    return frv_from(ps.rx_wave_vectors(), ps.wavelength(), r);
}

cxd channel_response(const PathSet &ps, const Position3D &t, const Position3D &r)
{
    const arma::cx_vec g = tx_frv(ps, t);
    const arma::cx_vec f = rx_frv(ps, r);
    return arma::cdot(f, ps.prm() * g); // cdot conjugates its first argument
}

arma::cx_mat mimo_channel(const PathSet &ps, const std::vector<Position3D> &tx_positions,
                          const std::vector<Position3D> &rx_positions)
{
    if (tx_positions.empty() || rx_positions.empty())
        throw config_error("mimo_channel requires non-empty position lists");
    arma::cx_mat g_all(ps.n_tx_paths(), tx_positions.size());
    for (std::size_t m = 0; m < tx_positions.size(); ++m)
        g_all.col(m) = tx_frv(ps, tx_positions[m]);
    arma::cx_mat f_all(ps.n_rx_paths(), rx_positions.size());
    for (std::size_t n = 0; n < rx_positions.size(); ++n)
        f_all.col(n) = rx_frv(ps, rx_positions[n]);
    return f_all.t() * ps.prm() * g_all; // .t() is the conjugate transpose
}

PathSet random_pathset(const RandomPathSetSpec &spec, std::uint64_t seed)
{
    if (spec.l_tx < 1 || spec.l_rx < 1)
        throw config_error("random_pathset requires at least one path per side");
    if (spec.prm_style == PrmStyle::Diagonal && spec.l_tx != spec.l_rx)
        throw config_error("diagonal path-response style requires L_t == L_r");
    if (spec.prm_style == PrmStyle::Los && (spec.l_tx != 1 || spec.l_rx != 1))
        throw config_error("line-of-sight style requires L_t == L_r == 1");
    if (!(spec.gain_variance > 0.0))
        throw config_error("gain variance must be positive");
    if (!(spec.wavelength > 0.0))
        throw config_error("wavelength must be positive");

    RngEngine rng = make_engine(seed);
    std::uniform_real_distribution<double> u_el(-0.5 * pi, 0.5 * pi);
    std::uniform_real_distribution<double> u_az(-pi, pi); // right edge excluded below

    auto draw_angles = [&](std::size_t n) {
        std::vector<PathAngles> out;
        out.reserve(n);
        for (std::size_t l = 0; l < n; ++l)
        {
            PathAngles a;
            a.elevation = u_el(rng);
            do
            {
                a.azimuth = u_az(rng);
            } while (a.azimuth >= pi);
            out.push_back(a);
        }
        return out;
    };

    std::vector<PathAngles> tx = draw_angles(spec.l_tx);
    std::vector<PathAngles> rx = draw_angles(spec.l_rx);

    arma::cx_mat prm(spec.l_rx, spec.l_tx, arma::fill::zeros);
    if (spec.prm_style == PrmStyle::Full)
    {
        for (std::size_t j = 0; j < spec.l_tx; ++j)
            for (std::size_t i = 0; i < spec.l_rx; ++i)
                prm(i, j) = draw_cscg(rng, spec.gain_variance);
    }
    else // Diagonal and Los
    {
        for (std::size_t l = 0; l < spec.l_tx; ++l)
            prm(l, l) = draw_cscg(rng, spec.gain_variance);
    }
    return PathSet(std::move(tx), std::move(rx), std::move(prm), spec.wavelength);
}

ChannelField::ChannelField(PathSet ps, MovingRegion tx, MovingRegion rx)
    : pathset(std::move(ps)), tx_region(tx), rx_region(rx)
{
}

} // namespace mawi

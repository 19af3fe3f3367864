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
#include <cstddef>
#include <vector>

#include <armadillo>

#include "mawi/geometry.hpp"

namespace mawi
{

// Which direction cosine (spatial-frequency coordinate) a derivative or bound
// refers to: the x, y or z component of the unit wave vector.
enum class Axis
{
    X = 0,
    Y = 1,
    Z = 2
};

// An ordered antenna array for sensing analysis. A single element is allowed
// so that snapshot trajectories can be represented; operations that need a
// real aperture state their own minimum.
class ArrayGeometry
{
  public:
    ArrayGeometry(std::vector<Position3D> positions, double wavelength);

    const std::vector<Position3D> &positions() const { return positions_; }
    std::size_t n_elements() const { return positions_.size(); }
    double wavelength() const { return wavelength_; }

    // Span of the element coordinates along one axis.
    double aperture(Axis axis) const;

  private:
    std::vector<Position3D> positions_;
    double wavelength_;
};

// Multi-target sensing setup: target directions, their (nuisance) complex
// amplitudes, per-amplitude-unit snr over unit noise, and snapshot count.
struct SensingScenario
{
    std::vector<PathAngles> targets;
    std::vector<std::complex<double>> amplitudes;
    double snr = 1.0;
    std::size_t snapshots = 1;
};

// Estimation bounds in the direction-cosine domain (primary, dimensionless^2)
// and in the angle domain (rad^2, via the chain rule; infinite where the
// chain-rule derivative vanishes).
struct CrbReport
{
    arma::vec crb_spatial;
    arma::vec crb_angle;
    arma::mat fim;
    arma::vec projection_residuals; // per-target ||P_perp d||^2
};

// Array response: entry n = exp(j (2 pi / lambda) k(angle) . p_n).
arma::cx_vec steering_vector(const ArrayGeometry &geometry, const PathAngles &angle);

// Derivative of the steering vector with respect to the direction cosine along
// `axis`: entry n = j (2 pi / lambda) p_{n,axis} a_n.
arma::cx_vec sensitivity_vector(const ArrayGeometry &geometry, const PathAngles &angle,
                                Axis axis = Axis::X);

struct BeamPattern
{
    arma::vec pattern;      // linear power, normalized to 1 at the peak
    double mainlobe_width;  // radians between the -3 dB crossings
    double peak_sidelobe;   // dB relative to the peak; -inf when no sidelobe exists
    std::size_t peak_index;
};

// Power pattern |w^H a(theta, phi)|^2 over an azimuth sweep at fixed elevation.
// The azimuth grid must be strictly increasing and fine enough that the
// mainlobe covers at least 8 samples.
BeamPattern beam_pattern(const ArrayGeometry &geometry, const arma::cx_vec &weights,
                         const arma::vec &azimuth_grid, double elevation = 0.0);

// Deterministic-signal bound for one target direction with the complex
// amplitude treated as a nuisance parameter:
// CRB = 1 / (2 snr K ||P_perp_a d||^2).
CrbReport single_target_crb(const ArrayGeometry &geometry, const PathAngles &angle, double snr,
                            std::size_t snapshots, Axis axis = Axis::X);

// Deterministic-signal bound for several targets sharing one probing waveform;
// all amplitudes are nuisance parameters, angles measured along `axis`.
CrbReport multi_target_crb(const ArrayGeometry &geometry, const SensingScenario &scenario,
                           Axis axis = Axis::X);

enum class CrbPlacementMethod
{
    ClosedForm,
    Grid
};

struct CrbPlacementConfig
{
    CrbPlacementMethod method = CrbPlacementMethod::ClosedForm;
    double grid_step = 0.0; // 0 selects lambda/4 (grid mode only)
    std::size_t combination_cap = 2'000'000;
    Axis axis = Axis::X;
};

// Minimum-CRB placement of n elements on a segment-shaped region: closed form
// packs the elements against the two segment ends at the minimum spacing
// (maximum position variance); grid mode searches a lattice exhaustively.
ArrayGeometry crb_optimal_placement(const MovingRegion &region, std::size_t n_elements,
                                    double wavelength, const PathAngles &angle, double snr,
                                    std::size_t snapshots,
                                    const CrbPlacementConfig &config = {});

// Merge the element positions visited over several snapshots into one
// effective static geometry (duplicates within 1e-9 m removed).
ArrayGeometry virtual_array_synthesis(const std::vector<ArrayGeometry> &trajectory);

} // namespace mawi

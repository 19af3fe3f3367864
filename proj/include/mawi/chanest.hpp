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

#include <cstdint>
#include <utility>
#include <vector>

#include <armadillo>

#include "mawi/field_channel.hpp"
#include "mawi/geometry.hpp"

namespace mawi
{

// Uniform quantization of [-1, 1] into G direction-cosine grid values per axis.
class AngularDictionary
{
  public:
    explicit AngularDictionary(std::size_t grid_count);

    std::size_t grid_count() const { return values_.size(); } // G
    const std::vector<double> &values() const { return values_; }
    std::size_t frv_length() const { return grid_count() * grid_count(); }   // G^2
    std::size_t joint_length() const { return frv_length() * frv_length(); } // G^4

  private:
    std::vector<double> values_;
};

AngularDictionary build_dictionary(std::size_t grid_count);

enum class Side
{
    Tx,
    Rx
};

// Discrete field-response vector of length G^2 at a 2D position (z must be 0):
// the Kronecker product of the y-axis grid phase vector (outer index) and the
// x-axis grid phase vector (inner index), entries exp(j(2*pi/lambda)*coord*grid).
arma::cx_vec discrete_frv(const AngularDictionary &dict, const Position3D &p, Side side,
                          double wavelength);

// One pilot-measurement campaign over M antenna-position pairs.
struct MeasurementCampaign
{
    std::vector<Position3D> tx_positions;
    std::vector<Position3D> rx_positions;
    arma::cx_vec pilots;     // y, length M
    double power = 1.0;      // transmit power P (pilot symbol fixed to 1)
    double noise_var = 0.0;
    double wavelength = 0.0;

    std::size_t size() const { return pilots.n_elem; }
    void validate() const;
};

// Largest joint dictionary (G^4 columns) measurement_matrix will materialize.
inline constexpr std::size_t default_dictionary_cap = std::size_t(1) << 24;

// Row m = g(t_m)^T kron f(r_m)^H over the joint Tx/Rx dictionary; M x G^4.
arma::cx_mat measurement_matrix(const AngularDictionary &dict, const MeasurementCampaign &campaign,
                                std::size_t column_cap = default_dictionary_cap);

// y_m = sqrt(P) * h(t_m, r_m) + n_m with n_m ~ CSCG(0, noise_var); deterministic per seed.
MeasurementCampaign simulate_pilots(const PathSet &ps, std::vector<Position3D> tx_positions,
                                    std::vector<Position3D> rx_positions, double power,
                                    double noise_var, std::uint64_t seed);

enum class RecoveryStatus
{
    Converged,    // residual criterion met
    SupportBudget // stopped at max_support
};

// Virtual AoD/AoA 4-tuple decoded from a joint dictionary index.
struct DecodedAngles
{
    double tx_elevation_cos = 0.0;
    double tx_azimuth_cos = 0.0;
    double rx_elevation_cos = 0.0;
    double rx_azimuth_cos = 0.0;
};

// Sparse coefficient estimate over a dictionary index space. Support indices are
// unique and ascending; gains are the least-squares refit on the support.
struct SparseEstimate
{
    std::size_t grid_count = 0;
    double wavelength = 0.0;
    std::vector<std::size_t> support;
    arma::cx_vec gains;
    std::vector<DecodedAngles> angles; // filled when recovered through a pipeline entry point
    RecoveryStatus status = RecoveryStatus::Converged;
    double residual_norm = 0.0;
    std::vector<double> residual_history; // norm after each greedy iteration
};

// Greedy orthogonal matching pursuit for y ~ sqrt(P) * Psi * u with the stopping
// rule ||residual||_2 <= ||y||_2 * epsilon0. Ties in atom selection break toward
// the lowest column index; gains are re-fit by least squares every iteration.
SparseEstimate omp_recover(const arma::cx_mat &psi, const arma::cx_vec &y, double power,
                           double epsilon0, std::size_t max_support);

// Index decoding. Joint index idx = j*G^2 + i couples Tx atom j with Rx atom i;
// within one side, atom s pairs values[s % G] with the x axis and values[s / G]
// with the y axis (the Kronecker layout of discrete_frv).
DecodedAngles decode_joint_index(const AngularDictionary &dict, std::size_t idx);
VirtualAngles decode_side_index(const AngularDictionary &dict, std::size_t idx);

// Stopping tolerance: 1e-3 for noiseless campaigns, otherwise twice the square
// root of the noise fraction of the received energy.
double default_epsilon0(const MeasurementCampaign &campaign);

// Joint Tx/Rx sparse recovery over the G^4 dictionary.
// epsilon0 < 0 or max_support == 0 select the defaults.
SparseEstimate joint_cs_estimate(const AngularDictionary &dict, const MeasurementCampaign &campaign,
                                 double epsilon0 = -1.0, std::size_t max_support = 0,
                                 std::size_t column_cap = default_dictionary_cap);

// Successive Tx/Rx estimation result: per-side supports plus the combined estimate.
struct StrcsEstimate
{
    std::vector<std::size_t> tx_support; // Tx-side dictionary atoms (AoDs)
    std::vector<std::size_t> rx_support; // Rx-side dictionary atoms (AoAs)
    SparseEstimate combined;             // joint index space, gains from the final LS fit
    double gain_residual = 0.0;          // residual norm of the LS gain system
};

// Three-stage estimation: (1) Tx moves with Rx fixed -> AoD support over G^2 atoms,
// (2) Rx moves with Tx fixed -> AoA support, (3) least squares over all campaigns
// for the coupling gains on the recovered support product.
StrcsEstimate strcs_estimate(const AngularDictionary &dict, const MeasurementCampaign &tx_campaign,
                             const MeasurementCampaign &rx_campaign,
                             const MeasurementCampaign &joint_campaign, double epsilon0 = -1.0,
                             std::size_t max_support = 0);

// Discrete-model channel at (t, r): sum over the support of gain * Tx phase * conj(Rx phase).
cxd reconstruct_channel(const SparseEstimate &est, const AngularDictionary &dict,
                        const Position3D &t, const Position3D &r, double wavelength);

// sum |h_true - h_est|^2 / sum |h_true|^2 over the evaluation pairs (t, r).
double nmse(const ChannelField &true_field, const SparseEstimate &est,
            const AngularDictionary &dict,
            const std::vector<std::pair<Position3D, Position3D>> &eval_positions);

} // namespace mawi

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

#include <armadillo>

#include "mawi/errors.hpp"

namespace mawi
{

// Bessel function of the first kind, order zero. Power series up to |x| = 12,
// Hankel asymptotic expansion beyond; absolute error below 1e-10 for |x| <= 50.
double bessel_j0(double x);

// N equally spaced candidate antenna ports on a segment of W wavelengths.
struct PortGrid
{
    PortGrid(std::size_t n_ports, double length_wl, double power);

    std::size_t n_ports;  // N >= 2
    double length_wl;     // W > 0, in wavelengths
    double power;         // sigma^2 > 0, large-scale channel power
};

// Real symmetric port-correlation matrix.
class CorrelationMatrix
{
  public:
    explicit CorrelationMatrix(arma::mat m);

    const arma::mat &matrix() const { return m_; }
    std::size_t size() const { return m_.n_rows; }

  private:
    arma::mat m_;
};

// Jake's model: entry (m, n) = sigma^2 * J0(2*pi*(m - n)*W/(N - 1)).
CorrelationMatrix jakes_correlation(const PortGrid &grid);

// Eigenpairs of the correlation matrix with eigenvalue > threshold, ordered
// non-increasingly. An empty truncation is valid: sampling then degenerates to
// i.i.d. per-port channels.
struct EigenTruncation
{
    double threshold = 0.0;
    arma::vec eigenvalues;  // non-increasing, all > threshold
    arma::mat eigenvectors; // N x rank, orthonormal columns

    std::size_t rank() const { return eigenvalues.n_elem; }
};

EigenTruncation eigen_truncate(const CorrelationMatrix &corr, double threshold);

// Correlated port channels: h_n = sqrt(sigma^2 - sum_m u_nm^2 lambda_m) v_n
//                                 + sum_m u_nm sqrt(lambda_m) z_m,
// with v_n, z_m circularly symmetric complex Gaussians of unit variance
// (components i.i.d. N(0, 1/2)). Residual variances in [-1e-9, 0) are clamped
// to zero; anything lower raises numerical_error. Deterministic per seed.
arma::cx_vec sample_port_channels(const EigenTruncation &tr, const PortGrid &grid,
                                  std::uint64_t seed);

} // namespace mawi

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

#include "mawi/spatial_corr.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mawi/geometry.hpp"
#include "mawi/rng.hpp"

namespace mawi
{

// Alternating power series with compensated summation; accurate up to |x| ~ 12
// where the largest term (~4e3) still leaves ample headroom over 1e-10.
static double j0_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int k = 1; k < 200; ++k)
    {
        term *= -q / (double(k) * double(k));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)))
            break;
    }
    return sum;
}

// Hankel asymptotic expansion J0(x) ~ sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)],
// truncated at the smallest term. For x >= 12 the smallest term is ~1e-11, which keeps
// the total error below the 1e-10 budget.
static double j0_asymptotic(double x)
{
    double c = 1.0;       // running coefficient c_m = c_{m-1} * (-(2m-1)^2) / (8m)
    double xpow = 1.0;    // x^m
    double p = 1.0;       // even-m terms
    double q = 0.0;       // odd-m terms
    double prev = 1e300;  // magnitude of the previous term
    for (int m = 1; m <= 40; ++m)
    {
        const double odd = 2.0 * m - 1.0;
        c *= -(odd * odd) / (8.0 * m);
        xpow *= x;
        const double t = c / xpow;
        if (std::abs(t) >= prev)
            break; // divergent tail reached
        prev = std::abs(t);
        if (m % 2 == 0)
            p += ((m / 2) % 2 ? -1.0 : 1.0) * t;
        else
            q += (((m - 1) / 2) % 2 ? -1.0 : 1.0) * t;
    }
    const double chi = x - 0.25 * pi;
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j0(double x)
{
    if (!std::isfinite(x))
        throw domain_error("bessel_j0 requires a finite argument");
    const double ax = std::abs(x);
    return ax <= 12.0 ? j0_series(ax) : j0_asymptotic(ax);
}

PortGrid::PortGrid(std::size_t n, double w, double p) : n_ports(n), length_wl(w), power(p)
{
    if (n_ports < 2)
        throw config_error("port grid needs at least 2 ports");
    if (!(length_wl > 0.0) || !std::isfinite(length_wl))
        throw config_error("port-grid length must be positive (in wavelengths)");
    if (!(power > 0.0) || !std::isfinite(power))
        throw config_error("large-scale power must be positive");
}

CorrelationMatrix::CorrelationMatrix(arma::mat m) : m_(std::move(m))
{
    if (m_.n_rows != m_.n_cols || m_.n_rows < 2)
        throw dimension_error("correlation matrix must be square with N >= 2");
    if (!m_.is_finite())
        throw config_error("correlation matrix entries must be finite");
    if (arma::abs(m_ - m_.t()).max() > 1e-12 * std::max(1.0, arma::abs(m_).max()))
        throw config_error("correlation matrix must be symmetric");
}

CorrelationMatrix jakes_correlation(const PortGrid &grid)
{
    const std::size_t n = grid.n_ports;
    arma::mat corr(n, n);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = m; k < n; ++k)
        {
            const double arg = 2.0 * pi * double(k - m) * grid.length_wl / double(n - 1);
            const double v = grid.power * bessel_j0(arg);
            corr(m, k) = v;
            corr(k, m) = v;
        }
    return CorrelationMatrix(std::move(corr));
}

EigenTruncation eigen_truncate(const CorrelationMatrix &corr, double threshold)
{
    if (!(threshold > 0.0) || !std::isfinite(threshold))
        throw config_error("eigenvalue threshold must be positive");
    arma::vec eigval;
    arma::mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, corr.matrix()))
        throw numerical_error("eigendecomposition of the correlation matrix failed");
    // eig_sym returns ascending order; keep values above threshold, flip to non-increasing
    arma::uvec keep = arma::find(eigval > threshold);
    EigenTruncation tr;
    tr.threshold = threshold;
    tr.eigenvalues = arma::reverse(eigval.elem(keep));
    tr.eigenvectors = arma::fliplr(eigvec.cols(keep));
    return tr;
}

arma::cx_vec sample_port_channels(const EigenTruncation &tr, const PortGrid &grid,
                                  std::uint64_t seed)
{
    const std::size_t n = grid.n_ports;
    const std::size_t rank = tr.rank();
    if (rank > 0 && tr.eigenvectors.n_rows != n)
        throw dimension_error("eigenvector length does not match the port count");

    // Residual per-port variance once the shared components are removed.
    arma::vec residual(n);
    for (std::size_t port = 0; port < n; ++port)
    {
        double acc = grid.power;
        for (std::size_t m = 0; m < rank; ++m)
        {
            const double u = tr.eigenvectors(port, m);
            acc -= u * u * tr.eigenvalues[m];
        }
        if (acc < -1e-9)
            throw numerical_error("negative residual variance " + std::to_string(acc) +
                                  " at port " + std::to_string(port) +
                                  "; truncation inconsistent with the grid power");
        residual[port] = std::max(acc, 0.0);
    }

    RngEngine rng = make_engine(seed);
    arma::cx_vec shared(rank);
    for (std::size_t m = 0; m < rank; ++m)
        shared[m] = draw_cscg(rng, 1.0);
    arma::cx_vec h(n);
    for (std::size_t port = 0; port < n; ++port)
    {
        std::complex<double> acc = std::sqrt(residual[port]) * draw_cscg(rng, 1.0);
        for (std::size_t m = 0; m < rank; ++m)
            acc += tr.eigenvectors(port, m) * std::sqrt(tr.eigenvalues[m]) * shared[m];
        h[port] = acc;
    }
    return h;
}

} // namespace mawi

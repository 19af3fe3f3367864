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

#include "mawi/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "mawi/errors.hpp"

namespace mawi
{

namespace
{

double axis_coord(const Position3D &p, Axis axis)
{
    switch (axis)
    {
    case Axis::X:
        return p.x;
    case Axis::Y:
        return p.y;
    default:
        return p.z;
    }
}

// d(direction cosine)/d(angle) for the chain rule to the angle domain: the
// in-plane cosines are differentiated in azimuth, the vertical one in elevation.
double chain_derivative(const PathAngles &angle, Axis axis)
{
    switch (axis)
    {
    case Axis::X:
        return -std::cos(angle.elevation) * std::sin(angle.azimuth);
    case Axis::Y:
        return std::cos(angle.elevation) * std::cos(angle.azimuth);
    default:
        return std::cos(angle.elevation);
    }
}

void require_signal(double snr, std::size_t snapshots)
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw domain_error("sensing: snr must be positive and finite");
    if (snapshots == 0)
        throw domain_error("sensing: need at least one snapshot");
}

double angle_domain(double crb_spatial, const PathAngles &angle, Axis axis)
{
    const double du = chain_derivative(angle, axis);
    if (du * du < 1e-300)
        return std::numeric_limits<double>::infinity();
    return crb_spatial / (du * du);
}

} // namespace

ArrayGeometry::ArrayGeometry(std::vector<Position3D> positions, double wavelength)
    : positions_(std::move(positions)), wavelength_(wavelength)
{
    if (positions_.empty())
        throw dimension_error("ArrayGeometry: need at least one element");
    if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_))
        throw domain_error("ArrayGeometry: wavelength must be positive and finite");
    for (const auto &p : positions_)
        if (!is_finite(p))
            throw domain_error("ArrayGeometry: element positions must be finite");
    for (std::size_t i = 0; i + 1 < positions_.size(); ++i)
        for (std::size_t j = i + 1; j < positions_.size(); ++j)
            if (distance(positions_[i], positions_[j]) < 1e-12)
                throw domain_error("ArrayGeometry: elements " + std::to_string(i) + " and " +
                                   std::to_string(j) + " coincide");
}

double ArrayGeometry::aperture(Axis axis) const
{
    double lo = axis_coord(positions_.front(), axis), hi = lo;
    for (const auto &p : positions_)
    {
        lo = std::min(lo, axis_coord(p, axis));
        hi = std::max(hi, axis_coord(p, axis));
    }
    return hi - lo;
}

arma::cx_vec steering_vector(const ArrayGeometry &geometry, const PathAngles &angle)
{
    const double k0 = 2.0 * std::numbers::pi / geometry.wavelength();
    const WaveVector k = wave_vector(angle);
    arma::cx_vec a(geometry.n_elements());
    for (std::size_t n = 0; n < geometry.n_elements(); ++n)
    {
        const Position3D &p = geometry.positions()[n];
        a(n) = std::polar(1.0, k0 * (k.x * p.x + k.y * p.y + k.z * p.z));
    }
    return a;
}

arma::cx_vec sensitivity_vector(const ArrayGeometry &geometry, const PathAngles &angle, Axis axis)
{
    const double k0 = 2.0 * std::numbers::pi / geometry.wavelength();
    arma::cx_vec d = steering_vector(geometry, angle);
    for (std::size_t n = 0; n < geometry.n_elements(); ++n)
        d(n) *= std::complex<double>(0.0, k0 * axis_coord(geometry.positions()[n], axis));
    return d;
}

BeamPattern beam_pattern(const ArrayGeometry &geometry, const arma::cx_vec &weights,
                         const arma::vec &azimuth_grid, double elevation)
{
    if (weights.n_elem != geometry.n_elements())
        throw dimension_error("beam_pattern: one weight per array element required");
    if (!weights.is_finite() || arma::norm(weights) <= 0.0)
        throw domain_error("beam_pattern: weights must be finite and not all zero");
    if (azimuth_grid.n_elem < 8)
        throw domain_error("beam_pattern: azimuth grid too coarse, need at least 8 samples");
    for (arma::uword i = 0; i + 1 < azimuth_grid.n_elem; ++i)
        if (!(azimuth_grid(i) < azimuth_grid(i + 1)))
            throw domain_error("beam_pattern: azimuth grid must be strictly increasing");

    BeamPattern bp;
    bp.pattern.set_size(azimuth_grid.n_elem);
    for (arma::uword i = 0; i < azimuth_grid.n_elem; ++i)
    {
        const PathAngles ang(elevation, azimuth_grid(i));
        const std::complex<double> r = arma::cdot(weights, steering_vector(geometry, ang));
        bp.pattern(i) = std::norm(r);
    }
    const double peak = bp.pattern.max();
    if (!(peak > 0.0))
        throw numerical_error("beam_pattern: pattern is identically zero");
    bp.pattern /= peak;
    bp.peak_index = bp.pattern.index_max();

    // Mainlobe: contiguous run around the peak above the half-power level.
    const double half = std::pow(10.0, -0.3);
    std::size_t left = bp.peak_index, right = bp.peak_index;
    while (left > 0 && bp.pattern(left - 1) > half)
        --left;
    while (right + 1 < bp.pattern.n_elem && bp.pattern(right + 1) > half)
        ++right;
    if (right - left + 1 < 8)
        throw domain_error("beam_pattern: mainlobe spans fewer than 8 grid points; refine the "
                           "azimuth grid");
    if (left == 0 || right + 1 == bp.pattern.n_elem)
        throw domain_error("beam_pattern: mainlobe is not resolved inside the azimuth grid");

    const auto crossing = [&](std::size_t outside, std::size_t inside)
    {
        const double p0 = bp.pattern(outside), p1 = bp.pattern(inside);
        const double t = (half - p0) / (p1 - p0);
        return azimuth_grid(outside) + t * (azimuth_grid(inside) - azimuth_grid(outside));
    };
    bp.mainlobe_width = crossing(right + 1, right) - crossing(left - 1, left);

    double sidelobe = 0.0;
    for (arma::uword i = 0; i < bp.pattern.n_elem; ++i)
    {
        if (i >= left && i <= right)
            continue;
        const bool rises_left = i == 0 || bp.pattern(i) >= bp.pattern(i - 1);
        const bool rises_right = i + 1 == bp.pattern.n_elem || bp.pattern(i) >= bp.pattern(i + 1);
        if (rises_left && rises_right)
            sidelobe = std::max(sidelobe, bp.pattern(i));
    }
    bp.peak_sidelobe = sidelobe > 0.0 ? 10.0 * std::log10(sidelobe)
                                      : -std::numeric_limits<double>::infinity();
    return bp;
}

CrbReport single_target_crb(const ArrayGeometry &geometry, const PathAngles &angle, double snr,
                            std::size_t snapshots, Axis axis)
{
    require_signal(snr, snapshots);
    if (geometry.n_elements() < 2)
        throw dimension_error("single_target_crb: need at least two elements");
    // ||P_perp_a d||^2 has the closed form k0^2 * N * var(p_axis): unit-modulus
    // steering entries give a^H d = j k0 sum(p) and ||d||^2 = k0^2 sum(p^2), so
    // the bound depends on the geometry only through the position spread along
    // the measured axis. The closed form also keeps the bound exactly scale
    // covariant under a dilation of the array.
    const double k0 = 2.0 * std::numbers::pi / geometry.wavelength();
    const double n = static_cast<double>(geometry.n_elements());
    double sum = 0.0, sum2 = 0.0;
    for (const auto &p : geometry.positions())
    {
        const double c = axis_coord(p, axis);
        sum += c;
        sum2 += c * c;
    }
    const double spread = sum2 - sum * sum / n;
    if (!(spread > 1e-20 * (1.0 + sum2)))
        throw numerical_error("single_target_crb: zero aperture along the measured axis makes "
                              "the information matrix singular");
    const double r2 = k0 * k0 * spread;
    const double fim = 2.0 * snr * static_cast<double>(snapshots) * r2;
    CrbReport report;
    report.fim = arma::mat(1, 1, arma::fill::value(fim));
    report.crb_spatial = arma::vec{1.0 / fim};
    report.crb_angle = arma::vec{angle_domain(1.0 / fim, angle, axis)};
    report.projection_residuals = arma::vec{r2};
    return report;
}

CrbReport multi_target_crb(const ArrayGeometry &geometry, const SensingScenario &scenario,
                           Axis axis)
{
    require_signal(scenario.snr, scenario.snapshots);
    const std::size_t t_count = scenario.targets.size();
    if (t_count == 0)
        throw dimension_error("multi_target_crb: need at least one target");
    if (scenario.amplitudes.size() != t_count)
        throw dimension_error("multi_target_crb: one amplitude per target required");
    if (t_count > geometry.n_elements() - 1)
        throw dimension_error("multi_target_crb: identifiability needs targets <= elements - 1");
    for (const auto &amp : scenario.amplitudes)
        if (!(std::abs(amp) > 0.0) || !std::isfinite(std::abs(amp)))
            throw domain_error("multi_target_crb: target amplitudes must be nonzero and finite");

    const std::size_t n = geometry.n_elements();
    arma::cx_mat a(n, t_count), d(n, t_count);
    for (std::size_t t = 0; t < t_count; ++t)
    {
        a.col(t) = steering_vector(geometry, scenario.targets[t]);
        d.col(t) = sensitivity_vector(geometry, scenario.targets[t], axis);
    }
    if (arma::rank(a) < t_count)
    {
        // Name the closest-to-collinear target pairs for the error message.
        std::ostringstream msg;
        msg << "multi_target_crb: steering matrix is rank deficient; colliding targets:";
        bool named = false;
        for (std::size_t i = 0; i + 1 < t_count; ++i)
            for (std::size_t j = i + 1; j < t_count; ++j)
            {
                const double coh =
                    std::abs(arma::cdot(a.col(i), a.col(j))) / static_cast<double>(n);
                if (coh > 1.0 - 1e-9)
                {
                    msg << " (" << i << "," << j << ")";
                    named = true;
                }
            }
        if (!named)
            msg << " (jointly dependent set)";
        throw numerical_error(msg.str());
    }

    arma::cx_mat gram_inv;
    if (!arma::inv_sympd(gram_inv, arma::cx_mat(a.t() * a)))
        throw numerical_error("multi_target_crb: steering Gram matrix is singular");
    const arma::cx_mat pd = d - a * (gram_inv * (a.t() * d)); // P_perp_A applied to each d_t
    const arma::cx_mat m = pd.t() * pd;

    arma::cx_vec beta(t_count);
    for (std::size_t t = 0; t < t_count; ++t)
        beta(t) = scenario.amplitudes[t];
    const double scale = 2.0 * scenario.snr * static_cast<double>(scenario.snapshots);
    arma::mat fim(t_count, t_count);
    for (std::size_t i = 0; i < t_count; ++i)
        for (std::size_t j = 0; j < t_count; ++j)
            fim(i, j) = scale * std::real(std::conj(beta(i)) * m(i, j) * beta(j));

    arma::mat fim_inv;
    if (!arma::inv_sympd(fim_inv, fim))
        throw numerical_error("multi_target_crb: Fisher information matrix is singular");

    CrbReport report;
    report.fim = fim;
    report.crb_spatial.set_size(t_count);
    report.crb_angle.set_size(t_count);
    report.projection_residuals.set_size(t_count);
    for (std::size_t t = 0; t < t_count; ++t)
    {
        report.crb_spatial(t) = fim_inv(t, t);
        report.crb_angle(t) = angle_domain(fim_inv(t, t), scenario.targets[t], axis);
        report.projection_residuals(t) = std::real(m(t, t));
    }
    return report;
}

ArrayGeometry crb_optimal_placement(const MovingRegion &region, std::size_t n_elements,
                                    double wavelength, const PathAngles &angle, double snr,
                                    std::size_t snapshots, const CrbPlacementConfig &config)
{
    require_signal(snr, snapshots);
    if (n_elements < 2)
        throw dimension_error("crb_optimal_placement: need at least two elements");
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw domain_error("crb_optimal_placement: wavelength must be positive and finite");
    const Position3D ext = region.extent();
    std::size_t axis_idx = 3;
    for (std::size_t d = 0; d < 3; ++d)
    {
        const double e = d == 0 ? ext.x : (d == 1 ? ext.y : ext.z);
        if (e > 0.0)
        {
            if (axis_idx != 3)
                throw config_error("crb_optimal_placement: region must be a 1D segment");
            axis_idx = d;
        }
    }
    if (axis_idx == 3)
        throw config_error("crb_optimal_placement: region must have one positive extent");
    region.require_packing_feasible(n_elements);

    const double lo = axis_idx == 0 ? region.lower().x
                                    : (axis_idx == 1 ? region.lower().y : region.lower().z);
    const double hi = axis_idx == 0 ? region.upper().x
                                    : (axis_idx == 1 ? region.upper().y : region.upper().z);
    const Position3D base = region.center();
    const auto at = [&](double c)
    {
        Position3D p = base;
        (axis_idx == 0 ? p.x : (axis_idx == 1 ? p.y : p.z)) = c;
        return p;
    };
    const double s = region.min_spacing();
    if (!(s > 0.0))
        throw config_error("crb_optimal_placement: region min_spacing must be positive");

    if (config.method == CrbPlacementMethod::ClosedForm)
    {
        // Even split between the two ends, odd element to the lower end,
        // packed at the minimum spacing: maximizes the position variance.
        const std::size_t n_lo = (n_elements + 1) / 2;
        const std::size_t n_hi = n_elements - n_lo;
        std::vector<Position3D> pos;
        pos.reserve(n_elements);
        for (std::size_t i = 0; i < n_lo; ++i)
            pos.push_back(at(lo + static_cast<double>(i) * s));
        for (std::size_t i = 0; i < n_hi; ++i)
            pos.push_back(at(hi - static_cast<double>(n_hi - 1 - i) * s));
        return ArrayGeometry(std::move(pos), wavelength);
    }

    const double step = config.grid_step > 0.0 ? config.grid_step : wavelength / 4.0;
    std::vector<double> lattice;
    for (double c = lo; c <= hi + 1e-9 * std::max(1.0, std::abs(hi)); c += step)
        lattice.push_back(std::min(c, hi));
    if (lattice.size() < n_elements)
        throw feasibility_error("crb_optimal_placement: lattice too coarse for the element count");
    double comb = 1.0;
    for (std::size_t i = 1; i <= n_elements; ++i)
        comb *= static_cast<double>(lattice.size() - n_elements + i) / static_cast<double>(i);
    if (comb > static_cast<double>(config.combination_cap))
        throw config_error("crb_optimal_placement: combination count exceeds the cap; use "
                           "closed_form or a coarser grid_step");

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> chosen, best_coords;
    const std::function<void(std::size_t)> recurse = [&](std::size_t first)
    {
        if (chosen.size() == n_elements)
        {
            std::vector<Position3D> pos;
            pos.reserve(n_elements);
            for (double c : chosen)
                pos.push_back(at(c));
            try
            {
                const CrbReport rep =
                    single_target_crb(ArrayGeometry(pos, wavelength), angle, snr, snapshots,
                                      static_cast<Axis>(axis_idx));
                if (rep.crb_spatial(0) < best)
                {
                    best = rep.crb_spatial(0);
                    best_coords = chosen;
                }
            }
            catch (const numerical_error &)
            {
                // zero-aperture lattice combination; skip
            }
            return;
        }
        for (std::size_t i = first; i < lattice.size(); ++i)
        {
            if (!chosen.empty() && lattice[i] - chosen.back() < s - 1e-12)
                continue;
            chosen.push_back(lattice[i]);
            recurse(i + 1);
            chosen.pop_back();
        }
    };
    recurse(0);
    if (best_coords.empty())
        throw feasibility_error("crb_optimal_placement: no spacing-feasible lattice combination");
    std::vector<Position3D> pos;
    pos.reserve(n_elements);
    for (double c : best_coords)
        pos.push_back(at(c));
    return ArrayGeometry(std::move(pos), wavelength);
}

ArrayGeometry virtual_array_synthesis(const std::vector<ArrayGeometry> &trajectory)
{
    if (trajectory.empty())
        throw dimension_error("virtual_array_synthesis: need at least one snapshot");
    const double wl = trajectory.front().wavelength();
    for (const auto &snap : trajectory)
        if (std::abs(snap.wavelength() - wl) > 1e-12 * wl)
            throw config_error("virtual_array_synthesis: snapshots must share one wavelength");
    std::vector<Position3D> merged;
    for (const auto &snap : trajectory)
        for (const auto &p : snap.positions())
        {
            bool dup = false;
            for (const auto &q : merged)
                if (distance(p, q) < 1e-9)
                {
                    dup = true;
                    break;
                }
            if (!dup)
                merged.push_back(p);
        }
    return ArrayGeometry(std::move(merged), wl);
}

} // namespace mawi

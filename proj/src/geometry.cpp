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

#include "mawi/geometry.hpp"

#include <algorithm>
#include <string>

namespace mawi
{

PathAngles::PathAngles(double elevation_rad, double azimuth_rad)
    : elevation(elevation_rad), azimuth(azimuth_rad)
{
    validate_angles(*this);
}

void validate_angles(const PathAngles &a)
{
    if (!std::isfinite(a.elevation) || a.elevation < -0.5 * pi || a.elevation > 0.5 * pi)
        throw domain_error("elevation angle must lie in [-pi/2, pi/2], got " +
                           std::to_string(a.elevation));
    if (!std::isfinite(a.azimuth) || a.azimuth < -pi || a.azimuth >= pi)
        throw domain_error("azimuth angle must lie in [-pi, pi), got " +
                           std::to_string(a.azimuth));
}

WaveVector wave_vector(const PathAngles &a)
{
    validate_angles(a);
    const double ce = std::cos(a.elevation);
    return {ce * std::cos(a.azimuth), ce * std::sin(a.azimuth), std::sin(a.elevation)};
}

VirtualAngles virtual_angles(const PathAngles &a)
{
    const WaveVector k = wave_vector(a);
    return {k.x, k.y};
}

PathAngles angles_from_virtual(const VirtualAngles &v)
{
    const double rho = std::hypot(v.elevation_cos, v.azimuth_cos);
    if (!std::isfinite(rho) || rho > 1.0 + 1e-12)
        throw domain_error("direction cosines exceed the unit disk");
    PathAngles a;
    a.elevation = std::acos(std::min(rho, 1.0));
    a.azimuth = (rho > 0.0) ? std::atan2(v.azimuth_cos, v.elevation_cos) : 0.0;
    if (a.azimuth >= pi) // atan2 may return exactly +pi
        a.azimuth = -pi;
    return a;
}

MovingRegion::MovingRegion(Position3D lower, Position3D upper, double min_spacing,
                           std::size_t n_antennas)
    : lower_(lower), upper_(upper), min_spacing_(min_spacing)
{
    if (!is_finite(lower_) || !is_finite(upper_))
        throw config_error("region corners must be finite");
    if (lower_.x > upper_.x || lower_.y > upper_.y || lower_.z > upper_.z)
        throw config_error("region lower corner must not exceed upper corner");
    if (!std::isfinite(min_spacing_) || min_spacing_ < 0.0)
        throw config_error("min_spacing must be a finite non-negative length");
    require_packing_feasible(n_antennas);
}

double MovingRegion::extent(int axis) const
{
    switch (axis)
    {
    case 0:
        return upper_.x - lower_.x;
    case 1:
        return upper_.y - lower_.y;
    case 2:
        return upper_.z - lower_.z;
    default:
        throw config_error("axis index must be 0, 1 or 2");
    }
}

double MovingRegion::diagonal() const
{
    return distance(lower_, upper_);
}

Position3D MovingRegion::center() const
{
    return 0.5 * (lower_ + upper_);
}

bool MovingRegion::contains(const Position3D &p, double tol) const
{
    return p.x >= lower_.x - tol && p.x <= upper_.x + tol && //
           p.y >= lower_.y - tol && p.y <= upper_.y + tol && //
           p.z >= lower_.z - tol && p.z <= upper_.z + tol;
}

std::size_t MovingRegion::packing_capacity() const
{
    if (min_spacing_ <= 0.0)
        return SIZE_MAX;
    std::size_t capacity = 1;
    for (int axis = 0; axis < 3; ++axis)
    {
        // +1e-9 relative slack so an exact multiple of the spacing counts
        const double slots = std::floor(extent(axis) / min_spacing_ * (1.0 + 1e-9)) + 1.0;
        const double next = double(capacity) * slots;
        if (next > 1e18)
            return SIZE_MAX;
        capacity = std::size_t(next);
    }
    return capacity;
}

void MovingRegion::require_packing_feasible(std::size_t n_antennas) const
{
    if (n_antennas > packing_capacity())
        throw feasibility_error("region cannot pack " + std::to_string(n_antennas) +
                                " antennas at min_spacing " + std::to_string(min_spacing_));
}

Position3D clamp_to_region(const Position3D &p, const MovingRegion &region)
{
    return {std::clamp(p.x, region.lower().x, region.upper().x),
            std::clamp(p.y, region.lower().y, region.upper().y),
            std::clamp(p.z, region.lower().z, region.upper().z)};
}

Position3D random_position(const MovingRegion &region, RngEngine &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Position3D p;
    p.x = region.lower().x + u(rng) * region.extent(0);
    p.y = region.lower().y + u(rng) * region.extent(1);
    p.z = region.lower().z + u(rng) * region.extent(2);
    return p;
}

double angular_resolution(double wavelength, double aperture)
{
    if (!(wavelength > 0.0) || !(aperture > 0.0))
        throw config_error("angular_resolution requires positive wavelength and aperture");
    return wavelength / aperture;
}

MoverProfile MoverProfile::motor()
{
    return {MoverArchitecture::Motor, 1e-3, 1.0, 1e-6, 0.1};
}
MoverProfile MoverProfile::mems()
{
    return {MoverArchitecture::Mems, 1e-6, 1e-3, 1e-9, 0.1};
}
MoverProfile MoverProfile::liquid_based()
{
    return {MoverArchitecture::LiquidBased, 1e-3, 1.0, 1e-6, 0.1};
}
MoverProfile MoverProfile::electronic()
{
    return {MoverArchitecture::Electronic, 1e-9, 1e-3, 1e-6, 0.1};
}
MoverProfile MoverProfile::movable_subarray()
{
    return {MoverArchitecture::MovableSubarray, 1e-3, 1.0, 1e-6, 0.1};
}

void validate_profile(const MoverProfile &p)
{
    if (!std::isfinite(p.response_time_lo) || !std::isfinite(p.response_time_hi) ||
        p.response_time_lo < 0.0 || p.response_time_lo > p.response_time_hi)
        throw config_error("mover response-time band must satisfy 0 <= lo <= hi");
    if (!(p.positioning_accuracy > 0.0))
        throw config_error("mover positioning accuracy must be positive");
    if (!(p.reference_traverse > 0.0))
        throw config_error("mover reference traverse must be positive");
}

double movement_time(const MoverProfile &profile, const Position3D &from, const Position3D &to)
{
    validate_profile(profile);
    const double d = distance(from, to);
    if (d == 0.0)
        return 0.0;
    const double t = d * profile.response_time_hi / profile.reference_traverse;
    return std::clamp(t, profile.response_time_lo, profile.response_time_hi);
}

} // namespace mawi

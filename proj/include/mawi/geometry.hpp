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
#include <cstddef>
#include <cstdint>

#include "mawi/errors.hpp"
#include "mawi/rng.hpp"

namespace mawi
{

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Cartesian position in meters. 2D scenarios fix z = 0.
struct Position3D
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Position3D operator+(const Position3D &a, const Position3D &b)
{
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Position3D operator-(const Position3D &a, const Position3D &b)
{
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Position3D operator*(double s, const Position3D &p)
{
    return {s * p.x, s * p.y, s * p.z};
}
inline double dot(const Position3D &a, const Position3D &b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Position3D &p)
{
    return std::sqrt(dot(p, p));
}
inline double distance(const Position3D &a, const Position3D &b)
{
    return norm(a - b);
}
inline bool is_finite(const Position3D &p)
{
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

// Elevation/azimuth direction in radians: elevation in [-pi/2, pi/2], azimuth in [-pi, pi).
struct PathAngles
{
    PathAngles() = default;
    PathAngles(double elevation_rad, double azimuth_rad);

    double elevation = 0.0;
    double azimuth = 0.0;
};

// Throws domain_error when either angle is outside its range.
void validate_angles(const PathAngles &a);

// Unit propagation direction expressed in direction cosines.
struct WaveVector
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// k = [cos(el)cos(az), cos(el)sin(az), sin(el)]; always unit norm.
WaveVector wave_vector(const PathAngles &a);

// The (x, y) direction cosines used for angular grid quantization.
struct VirtualAngles
{
    double elevation_cos = 0.0; // cos(el)·cos(az)
    double azimuth_cos = 0.0;   // cos(el)·sin(az)
};

VirtualAngles virtual_angles(const PathAngles &a);

// Inverse of virtual_angles on the non-negative-elevation branch.
// Requires hypot(elevation_cos, azimuth_cos) <= 1.
PathAngles angles_from_virtual(const VirtualAngles &v);

// Axis-aligned box with a pairwise minimum-spacing constraint for the antennas inside it.
class MovingRegion
{
  public:
    // Checks lower <= upper componentwise and that n_antennas points at min_spacing
    // fit into the box (grid-packing sufficient condition).
    MovingRegion(Position3D lower, Position3D upper, double min_spacing = 0.0,
                 std::size_t n_antennas = 1);

    const Position3D &lower() const { return lower_; }
    const Position3D &upper() const { return upper_; }
    double min_spacing() const { return min_spacing_; }

    double extent(int axis) const;
    Position3D extent() const { return upper_ - lower_; }
    double diagonal() const;
    Position3D center() const;
    bool contains(const Position3D &p, double tol = 0.0) const;

    // Number of points of an axis-aligned lattice at min_spacing that fit in the box.
    std::size_t packing_capacity() const;
    void require_packing_feasible(std::size_t n_antennas) const;

  private:
    Position3D lower_;
    Position3D upper_;
    double min_spacing_ = 0.0;
};

// Componentwise projection of p onto the box; the nearest point of the box.
Position3D clamp_to_region(const Position3D &p, const MovingRegion &region);

// Uniform draw over the box.
Position3D random_position(const MovingRegion &region, RngEngine &rng);

// Conventional mutual-coupling guard used when a scenario does not specify spacing.
inline double default_min_spacing(double wavelength)
{
    return 0.5 * wavelength;
}

// Smallest separation in direction-cosine space resolvable by an aperture of the given size.
double angular_resolution(double wavelength, double aperture);

enum class MoverArchitecture
{
    Motor,
    Mems,
    LiquidBased,
    Electronic,
    MovableSubarray
};

// Actuation profile of a mover class: response-time band and positioning accuracy.
struct MoverProfile
{
    MoverArchitecture architecture = MoverArchitecture::Motor;
    double response_time_lo = 1e-3;     // seconds
    double response_time_hi = 1.0;      // seconds
    double positioning_accuracy = 1e-6; // meters
    double reference_traverse = 0.1;    // meters; a move of this length takes response_time_hi

    static MoverProfile motor();
    static MoverProfile mems();
    static MoverProfile liquid_based();
    static MoverProfile electronic();
    static MoverProfile movable_subarray();
};

void validate_profile(const MoverProfile &p);

// Repositioning delay: zero for no move, otherwise linear in distance
// (reference_traverse maps to response_time_hi) clamped into the profile band.
double movement_time(const MoverProfile &profile, const Position3D &from, const Position3D &to);

} // namespace mawi

// SPDX-License-Identifier: Apache-2.0
//
// simris: RIS-assisted physical channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SIMRIS_GEOMETRY_HPP
#define SIMRIS_GEOMETRY_HPP

// Coordinate conventions used throughout the library:
//   - right-handed Cartesian frame in meters, floor at z = 0
//   - elevation theta is the polar angle from +z, in [0, pi]
//   - azimuth phi is measured from +x towards +y, in (-pi, pi]
//   - boresight angle psi is the angle between a direction and a surface normal

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace simris
{
    struct point3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        friend point3 operator+(point3 a, point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend point3 operator-(point3 a, point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend point3 operator*(double s, point3 a) { return {s * a.x, s * a.y, s * a.z}; }
        friend bool operator==(const point3 &, const point3 &) = default;

        bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    };

    inline double dot(point3 a, point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    inline double norm(point3 a) { return std::sqrt(dot(a, a)); }

    inline double distance(point3 a, point3 b) { return norm(b - a); }

    // Horizontal (xy-plane) distance, used for LOS probabilities
    inline double distance_2d(point3 a, point3 b) { return std::hypot(b.x - a.x, b.y - a.y); }

    enum class mounting_plane
    {
        xz, // side wall (scenario 1)
        yz, // opposite wall (scenario 2)
    };

    // Wall-mounted surface. `facing` selects which side of the wall is the front.
    struct surface_orientation
    {
        mounting_plane plane = mounting_plane::xz;
        int facing = +1;

        point3 normal() const
        {
            const double s = facing < 0 ? -1.0 : 1.0;
            return plane == mounting_plane::xz ? point3{0.0, s, 0.0} : point3{s, 0.0, 0.0};
        }

        // In-plane horizontal axis; element columns run along it
        point3 horizontal_axis() const
        {
            return plane == mounting_plane::xz ? point3{1.0, 0.0, 0.0} : point3{0.0, 1.0, 0.0};
        }

        // Orientation on `plane` whose front half-space contains `target`
        static surface_orientation facing_towards(mounting_plane plane, point3 origin, point3 target)
        {
            surface_orientation o{plane, +1};
            if (dot(target - origin, o.normal()) < 0.0)
                o.facing = -1;
            return o;
        }
    };

    inline std::string to_string(mounting_plane p) { return p == mounting_plane::xz ? "xz" : "yz"; }

    struct direction_angles
    {
        double azimuth = 0.0;   // phi
        double elevation = 0.0; // theta, polar from +z
        double boresight = 0.0; // psi, from the surface normal
        bool front = true;      // false when the direction points into the wall

        point3 unit_vector() const
        {
            const double st = std::sin(elevation);
            return {st * std::cos(azimuth), st * std::sin(azimuth), std::cos(elevation)};
        }

        // Antipodal direction: (theta, phi) -> (pi - theta, phi + pi)
        direction_angles reversed() const
        {
            direction_angles r;
            r.elevation = std::numbers::pi - elevation;
            r.azimuth = azimuth > 0.0 ? azimuth - std::numbers::pi : azimuth + std::numbers::pi;
            r.boresight = std::numbers::pi - boresight;
            r.front = !front;
            return r;
        }
    };

    // Angles of a direction vector (need not be normalized, must be non-zero)
    inline direction_angles angles_of(point3 dir, const surface_orientation &orientation)
    {
        const double len = norm(dir);
        if (!(len > 0.0))
            throw domain_error("angles_of: zero-length direction");
        direction_angles a;
        a.azimuth = std::atan2(dir.y, dir.x);
        a.elevation = std::acos(std::clamp(dir.z / len, -1.0, 1.0));
        const double c = std::clamp(dot(dir, orientation.normal()) / len, -1.0, 1.0);
        a.boresight = std::acos(c);
        a.front = c >= 0.0;
        if (a.front)
            a.boresight = std::min(a.boresight, std::numbers::pi / 2);
        return a;
    }

    // Angles of `target` seen from `origin` on a surface with the given orientation.
    // Targets behind the surface are flagged via `front == false`, not rejected.
    inline direction_angles angles_from(point3 origin, const surface_orientation &orientation, point3 target)
    {
        if (origin == target)
            throw domain_error("angles_from: origin and target coincide");
        return angles_of(target - origin, orientation);
    }
}

#endif

// SPDX-License-Identifier: Apache-2.0
//
// tris - transmissive RIS link and array simulation library
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

#include "tris/geometry.hpp"
#include "tris/common.hpp"

#include <algorithm>
#include <string>

namespace tris
{
    double norm(const Vec3 &a) { return std::hypot(a.x, a.y, a.z); }

    double angle_between(const Vec3 &a, const Vec3 &b)
    {
        double na = norm(a), nb = norm(b);
        if (na == 0.0 || nb == 0.0)
            fail(ErrorCode::degenerate_geometry, "angle between zero-length vectors");
        double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
        return std::acos(c);
    }

    ArrayGeometry::ArrayGeometry(std::size_t num_x, std::size_t num_y, double spacing_x, double spacing_y)
        : num_x_(num_x), num_y_(num_y), spacing_x_(spacing_x), spacing_y_(spacing_y)
    {
        if (num_x == 0 || num_y == 0)
            fail(ErrorCode::invalid_argument, "array geometry needs at least one element per axis");
        if (!(spacing_x > 0.0) || !(spacing_y > 0.0) || !std::isfinite(spacing_x) || !std::isfinite(spacing_y))
            fail(ErrorCode::invalid_argument, "element spacing must be positive and finite");
    }

    double ArrayGeometry::offset_x(std::size_t m) const
    {
        if (m >= num_x_)
            fail(ErrorCode::invalid_argument, "row index " + std::to_string(m) + " out of range");
        return double(m) - 0.5 * double(num_x_ - 1);
    }

    double ArrayGeometry::offset_y(std::size_t n) const
    {
        if (n >= num_y_)
            fail(ErrorCode::invalid_argument, "column index " + std::to_string(n) + " out of range");
        return double(n) - 0.5 * double(num_y_ - 1);
    }

    double ArrayGeometry::aperture_diagonal() const { return std::hypot(aperture_width(), aperture_height()); }

    Vec3 spherical_to_cartesian(double range, double polar, double azimuth)
    {
        if (!(range >= 0.0))
            fail(ErrorCode::invalid_argument, "range must be non-negative");
        double s = std::sin(polar);
        return {range * s * std::cos(azimuth), range * s * std::sin(azimuth), range * std::cos(polar)};
    }

    Spherical cartesian_to_spherical(double x, double y, double z)
    {
        double r = std::hypot(x, y, z);
        if (r == 0.0)
            return {0.0, 0.0, 0.0};
        double rho = std::hypot(x, y);
        double polar = std::atan2(rho, z);
        double azimuth = rho == 0.0 ? 0.0 : std::atan2(y, x);
        return {r, polar, azimuth};
    }

    Pose Pose::cartesian(double x, double y, double z)
    {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            fail(ErrorCode::invalid_argument, "pose coordinates must be finite");
        auto s = cartesian_to_spherical(x, y, z);
        return Pose({x, y, z}, s.range, s.polar, s.azimuth);
    }

    Pose Pose::spherical(double range, double polar, double azimuth)
    {
        if (!std::isfinite(range) || !std::isfinite(polar) || !std::isfinite(azimuth))
            fail(ErrorCode::invalid_argument, "pose coordinates must be finite");
        return Pose(spherical_to_cartesian(range, polar, azimuth), range, polar, azimuth);
    }

    Vec3 element_position(std::size_t m, std::size_t n, const ArrayGeometry &geom)
    {
        return {geom.offset_x(m) * geom.spacing_x(), geom.offset_y(n) * geom.spacing_y(), 0.0};
    }

    double exact_distance(const Pose &point, std::size_t m, std::size_t n, const ArrayGeometry &geom)
    {
        double d = norm(point.position() - element_position(m, n, geom));
        if (d == 0.0)
            fail(ErrorCode::degenerate_geometry, "point coincides with element (" + std::to_string(m) + ", " + std::to_string(n) + ")");
        return d;
    }

    double planar_distance(const Pose &source, std::size_t m, std::size_t n, const ArrayGeometry &geom)
    {
        if (!(source.range() > 0.0))
            fail(ErrorCode::invalid_argument, "plane-wave distance needs a source at positive range");
        double s = std::sin(source.polar());
        return source.range() - geom.offset_x(m) * geom.spacing_x() * s * std::cos(source.azimuth()) -
               geom.offset_y(n) * geom.spacing_y() * s * std::sin(source.azimuth());
    }

    double fraunhofer_distance(const ArrayGeometry &geom, double carrier_hz)
    {
        double d = geom.aperture_diagonal();
        return 2.0 * d * d / wavelength(carrier_hz);
    }
}

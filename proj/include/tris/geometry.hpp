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

#ifndef TRIS_GEOMETRY_HPP
#define TRIS_GEOMETRY_HPP

#include <cstddef>

namespace tris
{
    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;
    };

    inline Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    inline Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    inline Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    double norm(const Vec3 &a);

    // Angle between two non-zero vectors in [0, pi]
    double angle_between(const Vec3 &a, const Vec3 &b);

    // Uniform planar panel in the x-y plane, centered on the origin.
    // Element (m, n) sits at (dm * spacing_x, dn * spacing_y, 0) with
    // dm = m - (num_x - 1) / 2 and dn = n - (num_y - 1) / 2. Even counts give
    // half-integer offsets and no center element.
    class ArrayGeometry
    {
    public:
        ArrayGeometry(std::size_t num_x, std::size_t num_y, double spacing_x, double spacing_y);

        std::size_t num_x() const noexcept { return num_x_; }
        std::size_t num_y() const noexcept { return num_y_; }
        std::size_t size() const noexcept { return num_x_ * num_y_; }
        double spacing_x() const noexcept { return spacing_x_; }
        double spacing_y() const noexcept { return spacing_y_; }

        double offset_x(std::size_t m) const; // dm
        double offset_y(std::size_t n) const; // dn

        double aperture_width() const noexcept { return double(num_x_) * spacing_x_; }
        double aperture_height() const noexcept { return double(num_y_) * spacing_y_; }
        double aperture_area() const noexcept { return aperture_width() * aperture_height(); }
        double aperture_diagonal() const;

        // Row-major flat index, m outer
        std::size_t index(std::size_t m, std::size_t n) const { return m * num_y_ + n; }

    private:
        std::size_t num_x_, num_y_;
        double spacing_x_, spacing_y_;
    };

    // A point relative to the panel center, held in both Cartesian and
    // spherical form. polar is measured from +z (panel normal), azimuth in the
    // x-y plane from +x. Each side of the transmissive panel uses its own
    // outward normal as +z.
    class Pose
    {
    public:
        static Pose cartesian(double x, double y, double z);
        static Pose spherical(double range, double polar, double azimuth);

        double x() const noexcept { return p_.x; }
        double y() const noexcept { return p_.y; }
        double z() const noexcept { return p_.z; }
        double range() const noexcept { return range_; }
        double polar() const noexcept { return polar_; }
        double azimuth() const noexcept { return azimuth_; }
        const Vec3 &position() const noexcept { return p_; }

    private:
        Pose(Vec3 p, double range, double polar, double azimuth) : p_(p), range_(range), polar_(polar), azimuth_(azimuth) {}
        Vec3 p_;
        double range_, polar_, azimuth_;
    };

    Vec3 spherical_to_cartesian(double range, double polar, double azimuth);

    struct Spherical
    {
        double range, polar, azimuth;
    };
    Spherical cartesian_to_spherical(double x, double y, double z);

    Vec3 element_position(std::size_t m, std::size_t n, const ArrayGeometry &geom);

    // Spherical-wave distance from the point to element (m, n)
    double exact_distance(const Pose &point, std::size_t m, std::size_t n, const ArrayGeometry &geom);

    // Plane-wave approximation r - dm dx sin(polar) cos(azimuth) - dn dy sin(polar) sin(azimuth)
    double planar_distance(const Pose &source, std::size_t m, std::size_t n, const ArrayGeometry &geom);

    // 2 D^2 / lambda with D the aperture diagonal
    double fraunhofer_distance(const ArrayGeometry &geom, double carrier_hz);
}

#endif

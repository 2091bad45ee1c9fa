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

#ifndef TRIS_COMMON_HPP
#define TRIS_COMMON_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tris
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // [m/s]

    // Error categories surfaced through the C API as status codes
    enum class ErrorCode
    {
        invalid_argument = 1,
        degenerate_geometry,
        capacity,
        unsupported_configuration,
        resolution,
        metric_undefined,
        infeasible_target,
        parse,
        io
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    [[noreturn]] inline void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
    inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

    inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

    inline double wavelength(double carrier_hz)
    {
        if (!(carrier_hz > 0.0))
            fail(ErrorCode::invalid_argument, "carrier frequency must be positive");
        return speed_of_light / carrier_hz;
    }

    // Reduces an angle to [0, 2*pi)
    inline double wrap_two_pi(double a)
    {
        double r = std::fmod(a, two_pi);
        if (r < 0.0)
            r += two_pi;
        if (r >= two_pi) // fmod of a tiny negative value can round up to 2*pi
            r = 0.0;
        return r;
    }

    // Shortest distance between two angles on the unit circle, in [0, pi]
    inline double circular_distance(double a, double b)
    {
        double d = wrap_two_pi(a - b);
        return d > pi ? two_pi - d : d;
    }
}

#endif

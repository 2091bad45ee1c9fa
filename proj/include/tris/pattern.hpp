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

#ifndef TRIS_PATTERN_HPP
#define TRIS_PATTERN_HPP

#include "tris/beam.hpp"
#include "tris/channel.hpp"

#include <iosfwd>
#include <vector>

namespace tris
{
    struct Direction
    {
        double theta = 0.0; // polar angle from the panel normal [rad]
        double phi = 0.0;   // azimuth [rad]
    };

    enum class GridKind
    {
        hemisphere, // theta outer in [0, pi/2], phi inner in [0, 2 pi)
        cut         // one principal plane, signed angle in [-pi/2, pi/2]
    };

    class AngularGrid
    {
    public:
        // Steps must divide 90 deg and 360 deg into whole numbers of intervals
        static AngularGrid hemisphere(double theta_step, double phi_step);

        // Signed angle s maps to (|s|, plane) for s >= 0 and (|s|, plane + pi) for s < 0
        static AngularGrid cut(double plane_phi, double step);

        GridKind kind() const noexcept { return kind_; }
        const std::vector<Direction> &directions() const noexcept { return dirs_; }
        std::size_t size() const noexcept { return dirs_.size(); }
        double theta_step() const noexcept { return theta_step_; }
        double phi_step() const noexcept { return phi_step_; }
        std::size_t num_theta() const noexcept { return num_theta_; }
        std::size_t num_phi() const noexcept { return num_phi_; }
        double plane_phi() const noexcept { return plane_phi_; }

        // Signed cut angle of sample i (cut grids only)
        double signed_angle(std::size_t i) const;

        bool same_as(const AngularGrid &o) const;

    private:
        GridKind kind_ = GridKind::cut;
        std::vector<Direction> dirs_;
        double theta_step_ = 0.0, phi_step_ = 0.0, plane_phi_ = 0.0;
        std::size_t num_theta_ = 0, num_phi_ = 0;
    };

    enum class Normalization
    {
        raw,
        peak
    };

    struct RadiationPattern
    {
        AngularGrid grid;
        std::vector<cplx> field;
        double carrier_hz = 0.0;
        Normalization normalization = Normalization::raw;

        double power(std::size_t i) const { return std::norm(field.at(i)); }
        std::size_t peak_index() const;
        double peak_power() const { return power(peak_index()); }

        // Copy scaled so that the peak power is exactly 1
        RadiationPattern normalized() const;
    };

    // Space-fed panel: feed horn excitation times element state times array phase
    struct PatternSource
    {
        const RISConfiguration *config = nullptr;
        Pose feed = Pose::spherical(0.05, 0.0, 0.0);
        double feed_exponent = 8.31;
        double element_exponent = 1.0; // field element factor cos^gamma(theta)
        double carrier_hz = 27.0e9;
        PhaseMode mode = PhaseMode::nominal;
        const ElementStateTable *table = nullptr;
    };

    // E(theta, phi) = cos^gamma(theta) sum A_mn Gamma_mn exp(j phi_mn) exp(jk (x_m u + y_n v))
    // with u = sin(theta) cos(phi), v = sin(theta) sin(phi)
    RadiationPattern radiation_pattern(const PatternSource &source, const AngularGrid &grid);

    // Same sum for arbitrary per-element excitations (row-major, m outer)
    RadiationPattern array_pattern(std::span<const cplx> excitation, const ArrayGeometry &geom, double element_exponent,
                                   double carrier_hz, const AngularGrid &grid);

    struct GainEstimate
    {
        double directivity_dbi;
        double gain_dbi;
    };

    // Forward-hemisphere quadrature; the result is rejected if the estimate on the
    // grid and on its 2x coarser sub-grid differ by 0.1 dB or more
    GainEstimate directivity_and_gain(const RadiationPattern &pattern, double loss_budget_db);

    struct CutMetrics
    {
        double peak_angle;        // signed [rad]
        Direction peak_direction;
        double peak_power;
        double sidelobe_level_db; // highest lobe outside the first nulls, relative to peak
        double hpbw;              // [rad]
        double null_left, null_right; // signed [rad]
    };

    CutMetrics pattern_metrics(const RadiationPattern &cut);

    // 10 log10(peak_broadside / peak_steered), both raw and on the same grid
    double scan_loss(const RadiationPattern &broadside, const RadiationPattern &steered);

    // G lambda^2 / (4 pi A)
    double aperture_efficiency(double gain_dbi, double aperture_area, double carrier_hz);

    // theta_deg,phi_deg,power_db columns, power relative to the pattern peak
    void write_pattern_csv(const RadiationPattern &pattern, std::ostream &out);
}

#endif

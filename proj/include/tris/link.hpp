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

#ifndef TRIS_LINK_HPP
#define TRIS_LINK_HPP

#include "tris/beam.hpp"
#include "tris/channel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tris
{
    struct MCSRow
    {
        double min_snr_db;
        double rate_mbps;
        std::string label; // documentation only
    };

    // Monotone SNR-to-rate step function with an implicit (-inf, 0 Mbps) floor
    class MCSTable
    {
    public:
        MCSTable() = default;
        explicit MCSTable(std::vector<MCSRow> rows); // strictly increasing in both columns

        // Thresholds calibrated against the shipped scenario bundle
        static MCSTable calibrated();

        // "snr:rate,snr:rate,..." with SNR in dB and rate in Mbps
        static MCSTable parse(const std::string &text);

        const std::vector<MCSRow> &rows() const noexcept { return rows_; }
        double rate_mbps(double snr_db) const;

        // Minimum SNR of the row carrying this rate; invalid_argument if absent
        double threshold_db(double rate_mbps) const;

    private:
        std::vector<MCSRow> rows_;
    };

    // Thermal floor -174 dBm/Hz plus bandwidth and noise figure
    double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

    enum class ObstaclePosition
    {
        tx_side, // between the transmitter and the panel
        rx_side  // between the panel and the receiver
    };

    // Obstacle attenuation used by the calibrated scenarios
    inline constexpr double calibrated_obstacle_db = 6.5;

    struct Obstacle
    {
        double attenuation_db = calibrated_obstacle_db;
        ObstaclePosition position = ObstaclePosition::tx_side;
    };

    // Gain of a 4.9 mm square cell at 27 GHz, 4 pi dx dy / lambda^2
    inline constexpr double calibrated_element_gain_dbi = 3.89;

    // One operating point. Both endpoint poses are expressed in the frame of
    // the panel side they face, each with its own +z normal. Without the panel
    // the receiver sits at the mirrored point (x, y, -z) of the transmitter
    // frame and the link is a direct horn-to-horn Friis path.
    struct LinkScenario
    {
        std::string name;
        double transmit_power_dbm = 13.6;
        double carrier_hz = 27.0e9;
        double bandwidth_hz = 800.0e6;
        double noise_figure_db = 10.0;
        double system_loss_db = 0.0;       // common to every path (cables, converters)
        double panel_excess_loss_db = 0.0; // panel losses the element table does not capture
        GainProfile gains;
        Pose tx_pose = Pose::spherical(2.6, 0.0, 0.0);
        Pose rx_pose = Pose::spherical(0.05, 0.0, 0.0);
        DistanceModel tx_model = DistanceModel::automatic;
        DistanceModel rx_model = DistanceModel::automatic;
        bool ris_present = true;
        std::optional<Obstacle> obstacle;
        MCSTable mcs = MCSTable::calibrated();
        PhaseMode mode = PhaseMode::nominal;
        ElementStateTable element_table = ElementStateTable::default_2bit();
        int offset_samples = 64; // C-sweep resolution for the synthesized codebook

        // Parameter set fitted to the measured operating points: element side
        // gains at the unit-cell limit, 42 dB common loss, 3.15 dB panel excess
        // loss, realized element states
        static LinkScenario calibrated();

        // theta_t, the polar angle of the transmitter seen from the panel
        double tx_steer_angle() const { return tx_pose.polar(); }

        void validate() const;
    };

    struct LinkResult
    {
        double received_power_dbm;
        double snr_db;
        double rate_mbps;
        std::optional<RISConfiguration> codebook; // set only when the panel is present
    };

    LinkResult evaluate_scenario(const LinkScenario &scenario, const ArrayGeometry &geom, int bits);

    // Minimum transmit power, on a 0.1 dB grid, whose SNR reaches the
    // threshold of target_rate. Unreachable at +60 dBm -> infeasible_target.
    inline constexpr double max_transmit_power_dbm = 60.0;
    double required_transmit_power(const LinkScenario &scenario, const ArrayGeometry &geom, int bits,
                                   double target_rate_mbps);

    enum class ArrayGainReference
    {
        feed_alone,    // the direct link with the panel removed
        single_element // the same cascade through a 1x1 panel at the origin
    };

    // Pass this as `bits` for unquantized, lossless co-phasing
    inline constexpr int continuous_phase = 0;

    // Received-power improvement of the panel link over the reference in dB.
    // Obstacles are ignored since they scale both links alike.
    double array_gain(const ArrayGeometry &geom, const LinkScenario &scenario, int bits,
                      ArrayGainReference reference = ArrayGainReference::feed_alone);
}

#endif

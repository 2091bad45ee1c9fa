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

#include "tris/link.hpp"
#include "tris/common.hpp"

#include "text_util.hpp"

#include <cmath>
#include <limits>

namespace tris
{
    MCSTable::MCSTable(std::vector<MCSRow> rows) : rows_(std::move(rows))
    {
        for (std::size_t i = 0; i < rows_.size(); ++i)
        {
            const auto &r = rows_[i];
            if (!std::isfinite(r.min_snr_db) || !std::isfinite(r.rate_mbps) || r.rate_mbps <= 0.0)
                fail(ErrorCode::invalid_argument, "MCS rows need a finite threshold and a positive rate");
            if (i > 0 && (r.min_snr_db <= rows_[i - 1].min_snr_db || r.rate_mbps <= rows_[i - 1].rate_mbps))
                fail(ErrorCode::invalid_argument, "MCS rows must be strictly increasing in SNR and rate");
        }
    }

    MCSTable MCSTable::calibrated()
    {
        // Rates observed on the 16-QAM, rate-1/2 Turbo testbed; thresholds are
        // fitted so that the shipped scenario bundle lands on them
        return MCSTable({{6.9, 450.0, "16QAM-r1/2-low"},
                         {11.6, 1024.0, "16QAM-r1/2-mid"},
                         {13.0, 1121.0, "16QAM-r1/2-high"},
                         {14.1, 1683.0, "16QAM-r1/2-max"}});
    }

    MCSTable MCSTable::parse(const std::string &text)
    {
        std::vector<MCSRow> rows;
        for (const auto &item : detail::split(text, ','))
        {
            const auto parts = detail::split(item, ':');
            if (parts.size() != 2)
                fail(ErrorCode::parse, "MCS entry '" + detail::trim(item) + "' is not of the form snr:rate");
            rows.push_back({detail::parse_double(parts[0], "MCS threshold"), detail::parse_double(parts[1], "MCS rate"), {}});
        }
        if (rows.empty())
            fail(ErrorCode::parse, "MCS table is empty");
        return MCSTable(std::move(rows));
    }

    double MCSTable::rate_mbps(double snr_db) const
    {
        double rate = 0.0;
        for (const auto &r : rows_)
            if (r.min_snr_db <= snr_db)
                rate = r.rate_mbps;
        return rate;
    }

    double MCSTable::threshold_db(double rate_mbps) const
    {
        for (const auto &r : rows_)
            if (r.rate_mbps == rate_mbps)
                return r.min_snr_db;
        fail(ErrorCode::invalid_argument, "rate " + std::to_string(rate_mbps) + " Mbps is not in the MCS table");
    }

    double noise_power_dbm(double bandwidth_hz, double noise_figure_db)
    {
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            fail(ErrorCode::invalid_argument, "bandwidth must be positive");
        if (!std::isfinite(noise_figure_db))
            fail(ErrorCode::invalid_argument, "noise figure must be finite");
        return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    }

    LinkScenario LinkScenario::calibrated()
    {
        LinkScenario s;
        s.name = "calibrated";
        s.gains = GainProfile::from_gains(22.7, 12.7, calibrated_element_gain_dbi, calibrated_element_gain_dbi);
        s.system_loss_db = 42.0;
        s.panel_excess_loss_db = 3.15;
        s.mode = PhaseMode::realized;
        return s;
    }

    void LinkScenario::validate() const
    {
        if (!std::isfinite(transmit_power_dbm))
            fail(ErrorCode::invalid_argument, "transmit power must be finite");
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            fail(ErrorCode::invalid_argument, "carrier frequency must be positive");
        noise_power_dbm(bandwidth_hz, noise_figure_db);
        gains.validate();
        if (obstacle && (!(obstacle->attenuation_db >= 0.0) || !std::isfinite(obstacle->attenuation_db)))
            fail(ErrorCode::invalid_argument, "obstacle attenuation must be finite and non-negative");
        if (!(tx_pose.z() > 0.0) || !(rx_pose.z() > 0.0))
            fail(ErrorCode::invalid_argument, "transmitter and receiver must lie in front of their panel side");
        if (!(system_loss_db >= 0.0) || !std::isfinite(system_loss_db) || !(panel_excess_loss_db >= 0.0) ||
            !std::isfinite(panel_excess_loss_db))
            fail(ErrorCode::invalid_argument, "system and panel excess losses must be finite and non-negative");
        if (offset_samples < 1)
            fail(ErrorCode::invalid_argument, "offset sample count must be at least 1");
    }

    namespace
    {
        LinkParams link_params(const LinkScenario &s, double power_dbm)
        {
            return LinkParams{dbm_to_watts(power_dbm), s.carrier_hz, s.gains};
        }

        BeamSpec beam_spec(const LinkScenario &s)
        {
            BeamSpec spec;
            spec.tx = s.tx_pose;
            spec.rx = s.rx_pose;
            spec.tx_model = s.tx_model;
            spec.rx_model = s.rx_model;
            return spec;
        }

        // Horn-to-horn Friis path with both horns pointed at the panel center
        double direct_power_w(const LinkScenario &s, double power_dbm)
        {
            const Vec3 tx = s.tx_pose.position();
            const Vec3 rx{s.rx_pose.x(), s.rx_pose.y(), -s.rx_pose.z()};
            const Vec3 origin{0.0, 0.0, 0.0};
            const double d = norm(rx - tx);
            if (!(d > 0.0))
                fail(ErrorCode::degenerate_geometry, "transmitter and receiver coincide");
            const double psi_t = angle_between(origin - tx, rx - tx);
            const double psi_r = angle_between(origin - rx, tx - rx);
            const double lambda = wavelength(s.carrier_hz);
            const double fspl = std::pow(lambda / (4.0 * pi * d), 2);
            return dbm_to_watts(power_dbm) * db_to_linear(s.gains.tx_gain_dbi + s.gains.rx_gain_dbi) *
                   s.gains.tx_pattern(psi_t) * s.gains.rx_pattern(psi_r) * fspl;
        }

        struct PanelLink
        {
            double power_w;
            RISConfiguration config;
        };

        // The cascade sum carries lambda^2 / (16 pi^2) once; a second factor
        // turns it into the per-hop Friis product of both legs
        double hop_factor(double carrier_hz)
        {
            const double k = wavelength(carrier_hz) / (4.0 * pi);
            return k * k;
        }

        PanelLink panel_power_w(const LinkScenario &s, const ArrayGeometry &geom, int bits, double power_dbm)
        {
            const LinkParams link = link_params(s, power_dbm);
            const BeamSpec spec = beam_spec(s);
            const double hop = hop_factor(s.carrier_hz) * db_to_linear(-s.panel_excess_loss_db);
            if (bits == continuous_phase)
            {
                const auto terms = cascade_terms(link, geom, spec.tx, spec.rx);
                const auto phases = optimal_phases(spec, geom, s.carrier_hz);
                return {received_power(terms, continuous_response(phases)) * hop, RISConfiguration(geom, 1)};
            }
            PowerModel model{link, s.mode, s.mode == PhaseMode::realized ? &s.element_table : nullptr};
            auto swept = synthesize_codebook_swept(spec, geom, bits, model, s.offset_samples);
            return {swept.power * hop, std::move(swept.config)};
        }

        double obstacle_loss(const LinkScenario &s)
        {
            return s.obstacle ? db_to_linear(-s.obstacle->attenuation_db) : 1.0;
        }

        LinkResult evaluate_at(const LinkScenario &s, const ArrayGeometry &geom, int bits, double power_dbm)
        {
            s.validate();
            LinkResult out{};
            double p_w = 0.0;
            if (s.ris_present)
            {
                auto panel = panel_power_w(s, geom, bits, power_dbm);
                p_w = panel.power_w;
                out.codebook = std::move(panel.config);
            }
            else
                p_w = direct_power_w(s, power_dbm);
            p_w *= obstacle_loss(s) * db_to_linear(-s.system_loss_db);
            out.received_power_dbm = p_w > 0.0 ? watts_to_dbm(p_w) : -std::numeric_limits<double>::infinity();
            out.snr_db = out.received_power_dbm - noise_power_dbm(s.bandwidth_hz, s.noise_figure_db);
            out.rate_mbps = s.mcs.rate_mbps(out.snr_db);
            return out;
        }
    }

    LinkResult evaluate_scenario(const LinkScenario &scenario, const ArrayGeometry &geom, int bits)
    {
        if (scenario.ris_present && bits < 1)
            fail(ErrorCode::invalid_argument, "a panel link needs at least 1 bit of phase resolution");
        return evaluate_at(scenario, geom, bits, scenario.transmit_power_dbm);
    }

    double required_transmit_power(const LinkScenario &scenario, const ArrayGeometry &geom, int bits,
                                   double target_rate_mbps)
    {
        if (scenario.ris_present && bits < 1)
            fail(ErrorCode::invalid_argument, "a panel link needs at least 1 bit of phase resolution");
        const double threshold = scenario.mcs.threshold_db(target_rate_mbps);

        // The codebook maximizes received power, so it does not depend on P_t;
        // the channel is evaluated once and the bisection runs on the SNR law
        const double snr0 = evaluate_at(scenario, geom, bits, 0.0).snr_db;
        auto reaches = [&](double p_dbm) { return snr0 + p_dbm >= threshold; };

        if (!reaches(max_transmit_power_dbm))
            fail(ErrorCode::infeasible_target, "rate " + std::to_string(target_rate_mbps) +
                                                   " Mbps is unreachable at " +
                                                   std::to_string(max_transmit_power_dbm) + " dBm");
        double lo = -200.0, hi = max_transmit_power_dbm;
        if (reaches(lo))
            return lo;
        while (hi - lo > 1e-3)
        {
            const double mid = 0.5 * (lo + hi);
            (reaches(mid) ? hi : lo) = mid;
        }
        // Round up onto the 0.1 dB grid so that the returned power still reaches the rate
        double p = std::ceil(hi * 10.0 - 1e-6) / 10.0;
        while (!reaches(p))
            p += 0.1;
        return p;
    }

    double array_gain(const ArrayGeometry &geom, const LinkScenario &scenario, int bits, ArrayGainReference reference)
    {
        if (!scenario.ris_present)
            fail(ErrorCode::invalid_argument, "array gain needs a scenario with the panel present");
        scenario.validate();
        if (bits < 0)
            fail(ErrorCode::invalid_argument, "bit count must be non-negative");

        LinkScenario s = scenario;
        if (bits == continuous_phase)
            s.mode = PhaseMode::nominal;
        const double panel = panel_power_w(s, geom, bits, 0.0).power_w;

        double ref = 0.0;
        if (reference == ArrayGainReference::feed_alone)
            ref = direct_power_w(s, 0.0);
        else
        {
            const ArrayGeometry single(1, 1, geom.spacing_x(), geom.spacing_y());
            ref = panel_power_w(s, single, bits, 0.0).power_w;
        }
        if (!(panel > 0.0) || !(ref > 0.0))
            fail(ErrorCode::metric_undefined, "array gain undefined for a link with zero received power");
        return linear_to_db(panel / ref);
    }
}

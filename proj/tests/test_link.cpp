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


#include "test_util.hpp"
#include "tris/config.hpp"
#include "tris/link.hpp"

using namespace tris;

namespace
{
    const ArrayGeometry panel16(16, 16, 4.9e-3, 4.9e-3);

    RunConfig bundle() { return RunConfig::load(std::string(TRIS_DATA_DIR) + "/tables_4_5_6.scenario"); }

    const LinkScenario &find(const RunConfig &cfg, const std::string &name)
    {
        for (const auto &e : cfg.scenarios)
            if (e.scenario.name == name)
                return e.scenario;
        FAIL("no scenario " << name);
        throw;
    }

    int mismatches(const RunConfig &cfg)
    {
        int bad = 0;
        for (const auto &e : cfg.scenarios)
        {
            const auto r = evaluate_scenario(e.scenario, cfg.geometry, cfg.bits);
            if (e.expected_rate_mbps && r.rate_mbps != *e.expected_rate_mbps)
                ++bad;
        }
        return bad;
    }
}

TEST_CASE("noise power")
{
    CHECK(noise_power_dbm(800e6, 0.0) == doctest::Approx(-84.97).epsilon(1e-4));
    CHECK(noise_power_dbm(1.0, 0.0) == -174.0);
    CHECK(noise_power_dbm(800e6, 3.0) - noise_power_dbm(800e6, 0.0) == doctest::Approx(3.0));
    CHECK_ERROR(ErrorCode::invalid_argument, noise_power_dbm(0.0, 0.0));
}

TEST_CASE("MCS table")
{
    const auto t = MCSTable::calibrated();
    CHECK(t.rate_mbps(-50.0) == 0.0);
    CHECK(t.rate_mbps(6.9) == 450.0);
    CHECK(t.rate_mbps(11.59) == 450.0);
    CHECK(t.rate_mbps(13.5) == 1121.0);
    CHECK(t.rate_mbps(40.0) == 1683.0);
    double prev = 0.0;
    for (double snr = -10.0; snr < 30.0; snr += 0.01)
    {
        const double r = t.rate_mbps(snr);
        REQUIRE(r >= prev);
        prev = r;
    }
    CHECK(t.threshold_db(1024.0) == 11.6);
    CHECK_ERROR(ErrorCode::invalid_argument, t.threshold_db(999.0));

    const auto p = MCSTable::parse("1:10, 2.5:20");
    CHECK(p.rows().size() == 2);
    CHECK(p.rate_mbps(2.4) == 10.0);
    CHECK_ERROR(ErrorCode::parse, MCSTable::parse("1:10, 2.5"));
    CHECK_ERROR(ErrorCode::invalid_argument, MCSTable::parse("3:10, 2:20"));
    CHECK_ERROR(ErrorCode::invalid_argument, MCSTable::parse("1:20, 2:10"));
}

TEST_CASE("direct link follows Friis")
{
    LinkScenario s;
    s.ris_present = false;
    s.gains = GainProfile::from_gains(22.7, 12.7, 5.0, 5.0);
    const auto r = evaluate_scenario(s, panel16, 2);
    const double d = 2.6 + 0.05;
    const double expected = 13.6 + 22.7 + 12.7 + 20.0 * std::log10(wavelength(27e9) / (4.0 * pi * d));
    CHECK(r.received_power_dbm == doctest::Approx(expected).epsilon(1e-9));
    CHECK(r.snr_db == doctest::Approx(expected - noise_power_dbm(800e6, 10.0)));
    CHECK_FALSE(r.codebook.has_value());

    // Off-axis transmitter: both horns see the mirrored path off boresight
    s.tx_pose = Pose::spherical(2.6, deg_to_rad(30.0), 0.0);
    CHECK(evaluate_scenario(s, panel16, 2).received_power_dbm < expected);
}

TEST_CASE("panel link")
{
    LinkScenario s;
    const auto r = evaluate_scenario(s, panel16, 2);
    REQUIRE(r.codebook.has_value());
    CHECK(r.codebook->bits() == 2);
    CHECK_ERROR(ErrorCode::invalid_argument, evaluate_scenario(s, panel16, 0));

    SUBCASE("obstacles remove exactly their attenuation")
    {
        for (bool ris : {true, false})
            for (auto pos : {ObstaclePosition::tx_side, ObstaclePosition::rx_side})
            {
                LinkScenario a = s;
                a.ris_present = ris;
                const double clear = evaluate_scenario(a, panel16, 2).received_power_dbm;
                a.obstacle = Obstacle{17.25, pos};
                CHECK(evaluate_scenario(a, panel16, 2).received_power_dbm == doctest::Approx(clear - 17.25));
            }
        LinkScenario bad = s;
        bad.obstacle = Obstacle{-1.0, ObstaclePosition::tx_side};
        CHECK_ERROR(ErrorCode::invalid_argument, evaluate_scenario(bad, panel16, 2));
    }
    SUBCASE("more power never lowers the rate")
    {
        double prev = 0.0;
        for (double p = -40.0; p <= 40.0; p += 0.5)
        {
            LinkScenario a = s;
            a.transmit_power_dbm = p;
            const double rate = evaluate_scenario(a, panel16, 2).rate_mbps;
            CHECK(rate >= prev);
            prev = rate;
        }
        CHECK(prev == 1683.0);
    }
}

TEST_CASE("required transmit power")
{
    LinkScenario s;
    s.system_loss_db = 40.0;
    const double p = required_transmit_power(s, panel16, 2, 1024.0);
    LinkScenario at = s;
    at.transmit_power_dbm = p;
    CHECK(evaluate_scenario(at, panel16, 2).rate_mbps >= 1024.0);
    at.transmit_power_dbm = p - 0.1;
    CHECK(evaluate_scenario(at, panel16, 2).rate_mbps < 1024.0);
    CHECK(std::abs(p * 10.0 - std::round(p * 10.0)) < 1e-9);

    // A threshold 3 dB higher costs 3 dB more power
    LinkScenario harder = s;
    std::vector<MCSRow> rows = s.mcs.rows();
    for (auto &r : rows)
        r.min_snr_db += 3.0;
    harder.mcs = MCSTable(rows);
    CHECK(std::abs(required_transmit_power(harder, panel16, 2, 1024.0) - (p + 3.0)) <= 0.1 + 1e-9);

    CHECK_ERROR(ErrorCode::invalid_argument, required_transmit_power(s, panel16, 2, 777.0));

    // An opaque panel never reaches the rate
    LinkScenario opaque = s;
    opaque.mode = PhaseMode::realized;
    opaque.element_table = ElementStateTable(2, {{0, 0, 0, 400}, {1, 0, 0, 400}, {2, 0, 0, 400}, {3, 0, 0, 400}}, 27e9);
    CHECK_ERROR(ErrorCode::infeasible_target, required_transmit_power(opaque, panel16, 2, 450.0));
}

TEST_CASE("array gain")
{
    LinkScenario s;
    const ArrayGeometry one(1, 1, 4.9e-3, 4.9e-3);
    CHECK(array_gain(one, s, 2, ArrayGainReference::single_element) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(array_gain(one, s, continuous_phase, ArrayGainReference::single_element) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // Nearly equal path terms: coherent combining of N elements gives N^2 over one
    LinkScenario far = s;
    far.tx_pose = Pose::spherical(20.0, 0.0, 0.0);
    far.rx_pose = Pose::spherical(20.0, 0.0, 0.0);
    CHECK(array_gain(panel16, far, continuous_phase, ArrayGainReference::single_element) ==
          doctest::Approx(20.0 * std::log10(256.0)).epsilon(1e-3));

    // Quantization costs the array gain what the quantizer study predicts
    const double g_cont = array_gain(panel16, s, continuous_phase, ArrayGainReference::single_element);
    const double g_2bit = array_gain(panel16, s, 2, ArrayGainReference::single_element);
    const double ql = quantization_loss(panel16, BeamSpec{}, 2, LinkParams{1.0, s.carrier_hz, s.gains});
    CHECK(std::abs((g_cont - g_2bit) - ql) <= 0.1);

    LinkScenario direct = s;
    direct.ris_present = false;
    CHECK_ERROR(ErrorCode::invalid_argument, array_gain(panel16, direct, 2));
    CHECK_ERROR(ErrorCode::invalid_argument, array_gain(panel16, s, -1));
}

TEST_CASE("calibration bundle")
{
    const auto cfg = bundle();
    REQUIRE(cfg.scenarios.size() == 10);
    CHECK(mismatches(cfg) == 0);

    SUBCASE("the bundle matches LinkScenario::calibrated")
    {
        const auto c = LinkScenario::calibrated();
        const auto &s = find(cfg, "rate_ris");
        CHECK(s.system_loss_db == c.system_loss_db);
        CHECK(s.panel_excess_loss_db == c.panel_excess_loss_db);
        CHECK(s.gains.tx_gain_dbi == c.gains.tx_gain_dbi);
        CHECK(s.gains.rx_gain_dbi == c.gains.rx_gain_dbi);
        CHECK(s.gains.ris_rx_side_gain_dbi == c.gains.ris_rx_side_gain_dbi);
        CHECK(s.gains.ris_tx_side_gain_dbi == c.gains.ris_tx_side_gain_dbi);
        CHECK(s.mode == c.mode);
        CHECK(s.noise_figure_db == c.noise_figure_db);
        CHECK(s.mcs.rows().size() == c.mcs.rows().size());
        for (std::size_t i = 0; i < c.mcs.rows().size(); ++i)
        {
            CHECK(s.mcs.rows()[i].min_snr_db == c.mcs.rows()[i].min_snr_db);
            CHECK(s.mcs.rows()[i].rate_mbps == c.mcs.rows()[i].rate_mbps);
        }
        CHECK(find(cfg, "rate_ris_blocked").obstacle->attenuation_db == calibrated_obstacle_db);
        CHECK(calibrated_element_gain_dbi ==
              doctest::Approx(linear_to_db(4.0 * pi * 4.9e-3 * 4.9e-3 / std::pow(wavelength(27e9), 2))).epsilon(1e-3));
    }

    SUBCASE("obstacle attenuation window")
    {
        auto with = [&](double att) {
            auto c = cfg;
            for (auto &e : c.scenarios)
                if (e.scenario.obstacle)
                    e.scenario.obstacle->attenuation_db = att;
            return mismatches(c);
        };
        for (double att : {6.2, 6.5, 6.9})
            CHECK(with(att) == 0);
        // Too weak to cut the direct link, or strong enough to starve the panel link
        CHECK(with(5.5) > 0);
        CHECK(with(7.5) > 0);
        CHECK(with(25.0) > 0);
    }

    SUBCASE("transmit power reduction")
    {
        const double direct = required_transmit_power(find(cfg, "gain_no_ris"), cfg.geometry, cfg.bits, 1024.0);
        const double panel = required_transmit_power(find(cfg, "gain_ris"), cfg.geometry, cfg.bits, 1121.0);
        CHECK(direct - panel >= 7.0);
        CHECK(direct - panel <= 10.5);
        const double same = required_transmit_power(find(cfg, "gain_ris"), cfg.geometry, cfg.bits, 1024.0);
        CHECK(direct - same >= 7.0);
        CHECK(direct - same <= 10.5);
        const double gain = array_gain(cfg.geometry, find(cfg, "gain_ris"), cfg.bits);
        CHECK(std::abs(gain - 9.3) <= 0.5);
    }
}

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
#include "tris/channel.hpp"

#include <random>

using namespace tris;
using tris::test::rel_close;

namespace
{
    GainProfile isotropic()
    {
        GainProfile g;
        g.tx_gain_dbi = g.rx_gain_dbi = g.ris_rx_side_gain_dbi = g.ris_tx_side_gain_dbi = 0.0;
        g.tx_pattern = g.rx_pattern = g.ris_rx_side_pattern = g.ris_tx_side_pattern = CosinePattern{0.0};
        return g;
    }

    double carrier_for(double lambda) { return speed_of_light / lambda; }

    // Continuous phases that co-phase every term exactly, from exact distances
    std::vector<cplx> cophased(const LinkParams &link, const ArrayGeometry &geom, const Pose &tx, const Pose &rx)
    {
        const auto terms = cascade_terms(link, geom, tx, rx);
        std::vector<cplx> r;
        for (const auto &w : terms.weights)
            r.push_back(std::polar(1.0, -std::arg(w)));
        return r;
    }
}

TEST_CASE("state coefficients")
{
    const auto table = ElementStateTable::default_2bit();
    const auto c0 = state_coefficient(table, 0, PhaseMode::realized);
    CHECK(std::abs(c0) == doctest::Approx(0.881).epsilon(1e-3));
    CHECK(rad_to_deg(std::arg(c0)) == doctest::Approx(-141.2).epsilon(1e-9));

    const auto n0 = state_coefficient(table, 0, PhaseMode::nominal);
    CHECK(n0 == cplx(1.0, 0.0));
    const auto n3 = state_coefficient(table, 3, PhaseMode::nominal);
    CHECK(std::arg(n3) == doctest::Approx(-pi / 2.0));

    for (int c = 0; c < 3; ++c)
    {
        const double step = rad_to_deg(wrap_two_pi(table.state(c + 1).realized_phase - table.state(c).realized_phase));
        CHECK(step == doctest::Approx(90.0).epsilon(10.0 / 90.0));
    }
    CHECK(table.mean_insertion_loss_db() == doctest::Approx(1.25));

    CHECK_ERROR(ErrorCode::invalid_argument, state_coefficient(table, 4, PhaseMode::realized));
    CHECK_ERROR(ErrorCode::invalid_argument, state_coefficient(table, -1, PhaseMode::nominal));
}

TEST_CASE("element table text format")
{
    const auto t = ElementStateTable::parse("# two states\ncode,phase_deg,loss_db\nreference_freq_hz,28e9\n"
                                            "1,170,0.5\n0,-10,0.25\n");
    CHECK(t.bits() == 1);
    CHECK(t.reference_freq_hz() == 28e9);
    CHECK(rad_to_deg(t.state(1).realized_phase) == doctest::Approx(170.0));
    CHECK(t.state(0).insertion_loss_db == 0.25);

    CHECK_ERROR(ErrorCode::parse, ElementStateTable::parse("phase,code,loss\n0,0,0\n1,180,0\n"));
    CHECK_ERROR(ErrorCode::parse, ElementStateTable::parse("code,phase_deg,loss_db\n0,0\n1,180,0\n"));
    CHECK_ERROR(ErrorCode::parse, ElementStateTable::parse("code,phase_deg,loss_db\n0,0,0\n1,90,0\n2,180,0\n"));
    CHECK_ERROR(ErrorCode::invalid_argument, ElementStateTable::parse("code,phase_deg,loss_db\n0,0,0\n0,180,0\n"));
    CHECK_ERROR(ErrorCode::io, ElementStateTable::load("/nonexistent/table.csv"));
}

TEST_CASE("cos^q patterns")
{
    CHECK(exponent_from_gain_dbi(12.7) == doctest::Approx(8.31).epsilon(2e-3));
    CHECK_ERROR(ErrorCode::invalid_argument, exponent_from_gain_dbi(3.0));
    const CosinePattern p{8.31};
    CHECK(p(0.0) == 1.0);
    double prev = 1.0;
    for (double a = 0.01; a <= pi / 2.0; a += 0.01)
    {
        CHECK(p(a) <= prev);
        prev = p(a);
    }
    CHECK(p(2.0) == 0.0);
}

TEST_CASE("channel coefficient")
{
    const ArrayGeometry one(1, 1, 4.9e-3, 4.9e-3);
    const double fc = carrier_for(0.0111);
    const auto g = isotropic();
    const auto h1 = channel_coefficient(ChannelSide::toward_rx, Pose::cartesian(0, 0, 1.0), 0, 0, one, fc, g);
    CHECK(std::abs(h1) == doctest::Approx(0.02973).epsilon(1e-4));
    const auto h2 = channel_coefficient(ChannelSide::toward_rx, Pose::cartesian(0, 0, 2.0), 0, 0, one, fc, g);
    CHECK(std::abs(h2) == doctest::Approx(std::abs(h1) / 2.0).epsilon(1e-12));

    const auto at_lambda = channel_coefficient(ChannelSide::toward_tx, Pose::cartesian(0, 0, 0.0111), 0, 0, one, fc, g);
    CHECK(circular_distance(std::arg(at_lambda), 0.0) < 1e-9);
    CHECK_ERROR(ErrorCode::degenerate_geometry,
                channel_coefficient(ChannelSide::toward_rx, Pose::cartesian(0, 0, 0), 0, 0, one, fc, g));
}

TEST_CASE("received power of a single element")
{
    const ArrayGeometry one(1, 1, 4.9e-3, 4.9e-3);
    const LinkParams link{1.0, carrier_for(11.103e-3), isotropic()};
    const auto tx = Pose::spherical(2.6, 0.0, 0.0);
    const auto rx = Pose::spherical(0.05, 0.0, 0.0);
    const std::vector<cplx> r{cplx(1.0, 0.0)};
    const double p = received_power(link, one, r, tx, rx);
    CHECK(p == doctest::Approx(4.62e-5).epsilon(1e-3));
    // A single term is phase independent
    const std::vector<cplx> rot{std::polar(1.0, 2.3)};
    CHECK(received_power(link, one, rot, tx, rx) == doctest::Approx(p).epsilon(1e-12));
    const std::vector<cplx> opaque{cplx(0.0, 0.0)};
    CHECK(received_power(link, one, opaque, tx, rx) == 0.0);
}

TEST_CASE("coherent sum matches direct complex summation")
{
    const ArrayGeometry geom(16, 16, 4.9e-3, 4.9e-3);
    const double fc = 27e9;
    const double lambda = wavelength(fc);
    const LinkParams link{1.0, fc, isotropic()};
    const auto tx = Pose::spherical(2.6, deg_to_rad(20.0), 0.4);
    const auto rx = Pose::spherical(0.05, deg_to_rad(10.0), 2.0);

    // Phases 2 pi (dt + dr) / lambda from the exact distances
    std::vector<cplx> response;
    long double coherent = 0.0L;
    for (std::size_t m = 0; m < 16; ++m)
        for (std::size_t n = 0; n < 16; ++n)
        {
            const double dt = exact_distance(tx, m, n, geom), dr = exact_distance(rx, m, n, geom);
            response.push_back(std::polar(1.0, wrap_two_pi(two_pi * (dt + dr) / lambda)));
            coherent += 1.0L / (dt * dr);
        }
    const double closed = double(lambda * lambda / (16.0L * pi * pi) * coherent * coherent);

    std::complex<long double> sum = 0.0L;
    for (std::size_t m = 0; m < 16; ++m)
        for (std::size_t n = 0; n < 16; ++n)
        {
            const double dt = exact_distance(tx, m, n, geom), dr = exact_distance(rx, m, n, geom);
            const long double ph = std::arg(response[geom.index(m, n)]) - two_pi * (dt + dr) / lambda;
            sum += std::polar(1.0L / (dt * dr), ph);
        }
    const double direct = double(lambda * lambda / (16.0L * pi * pi) * std::norm(sum));
    CHECK(rel_close(direct, closed, 1e-9));
    CHECK(rel_close(received_power(link, geom, response, tx, rx), closed, 1e-9));
}

TEST_CASE("received power properties")
{
    const ArrayGeometry geom(4, 4, 4.9e-3, 4.9e-3);
    LinkParams link{1.0, 27e9, GainProfile::from_gains(22.7, 12.7, 5.0, 5.0)};
    const auto tx = Pose::spherical(1.3, 0.3, 0.2);
    const auto rx = Pose::spherical(0.08, 0.2, 3.0);
    const auto best = cophased(link, geom, tx, rx);
    const double p0 = received_power(link, geom, best, tx, rx);

    SUBCASE("co-phasing is a strict optimum")
    {
        for (std::size_t i = 0; i < best.size(); ++i)
            for (double eps : {1e-3, 0.5, pi})
            {
                auto r = best;
                r[i] *= std::polar(1.0, eps);
                CHECK(received_power(link, geom, r, tx, rx) < p0);
            }
    }
    SUBCASE("magnitude and power scaling")
    {
        auto r = best;
        for (auto &c : r)
            c *= 0.6;
        CHECK(received_power(link, geom, r, tx, rx) == doctest::Approx(0.36 * p0).epsilon(1e-12));
        link.transmit_power_w = 3.0;
        CHECK(received_power(link, geom, best, tx, rx) == doctest::Approx(3.0 * p0).epsilon(1e-12));
    }
    SUBCASE("reciprocity")
    {
        LinkParams swapped = link;
        auto &g = swapped.gains;
        std::swap(g.tx_gain_dbi, g.rx_gain_dbi);
        std::swap(g.tx_pattern, g.rx_pattern);
        std::swap(g.ris_rx_side_gain_dbi, g.ris_tx_side_gain_dbi);
        std::swap(g.ris_rx_side_pattern, g.ris_tx_side_pattern);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, two_pi);
        std::vector<cplx> r;
        for (std::size_t i = 0; i < geom.size(); ++i)
            r.push_back(std::polar(1.0, u(rng)));
        CHECK(received_power(swapped, geom, r, rx, tx) ==
              doctest::Approx(received_power(link, geom, r, tx, rx)).epsilon(1e-12));
    }
    SUBCASE("dimension mismatch")
    {
        std::vector<cplx> short_response(3, cplx(1.0));
        CHECK_ERROR(ErrorCode::invalid_argument, received_power(link, geom, short_response, tx, rx));
    }
}

TEST_CASE("feed illumination")
{
    const ArrayGeometry geom(16, 16, 4.9e-3, 4.9e-3);
    const auto feed = Pose::spherical(0.05, 0.0, 0.0);
    const double q = 8.31;

    const ArrayGeometry odd(3, 3, 4.9e-3, 4.9e-3);
    CHECK(std::abs(feed_illumination(feed, 1, 1, odd, 27e9, q)) == doctest::Approx(1.0 / 0.05));

    const auto corner = element_position(0, 0, geom);
    const double psi = std::atan(std::hypot(corner.x, corner.y) / 0.05);
    CHECK(rad_to_deg(psi) == doctest::Approx(46.1).epsilon(1e-3));
    const double d = exact_distance(feed, 0, 0, geom);
    const auto a = feed_illumination(feed, 0, 0, geom, 27e9, q);
    CHECK(std::abs(a) * d == doctest::Approx(0.047).epsilon(0.05));

    for (std::size_t m = 0; m < 16; ++m)
        for (std::size_t n = 0; n < 16; ++n)
            CHECK(std::abs(feed_illumination(feed, m, n, geom, 27e9, q)) ==
                  doctest::Approx(std::abs(feed_illumination(feed, 15 - m, 15 - n, geom, 27e9, q))));

    CHECK_ERROR(ErrorCode::invalid_argument, feed_illumination(Pose::cartesian(0, 0, -0.05), 0, 0, geom, 27e9, q));
}

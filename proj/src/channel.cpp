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

#include "tris/channel.hpp"
#include "tris/common.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tris
{
    ElementStateTable::ElementStateTable(int bits, std::vector<ElementState> entries, double reference_freq_hz)
        : bits_(bits), reference_freq_hz_(reference_freq_hz)
    {
        if (bits < 1 || bits > 8)
            fail(ErrorCode::invalid_argument, "element table resolution must be 1..8 bits");
        if (!(reference_freq_hz > 0.0))
            fail(ErrorCode::invalid_argument, "element table reference frequency must be positive");
        const int n = 1 << bits;
        if (int(entries.size()) != n)
            fail(ErrorCode::invalid_argument, "element table for " + std::to_string(bits) + " bits needs " +
                                                  std::to_string(n) + " states, got " + std::to_string(entries.size()));
        entries_.resize(std::size_t(n));
        std::vector<bool> seen(std::size_t(n), false);
        for (auto &e : entries)
        {
            if (e.code < 0 || e.code >= n)
                fail(ErrorCode::invalid_argument, "element table code " + std::to_string(e.code) + " out of range");
            if (seen[std::size_t(e.code)])
                fail(ErrorCode::invalid_argument, "element table code " + std::to_string(e.code) + " repeated");
            if (!(e.insertion_loss_db >= 0.0) || !std::isfinite(e.insertion_loss_db))
                fail(ErrorCode::invalid_argument, "element insertion loss must be a finite non-negative dB value");
            if (!std::isfinite(e.realized_phase))
                fail(ErrorCode::invalid_argument, "element phase must be finite");
            seen[std::size_t(e.code)] = true;
            e.nominal_phase = double(e.code) * two_pi / double(n);
            entries_[std::size_t(e.code)] = e;
        }
    }

    ElementStateTable ElementStateTable::default_2bit()
    {
        std::vector<ElementState> s = {
            {0, 0.0, deg_to_rad(-141.2), 1.1},
            {1, 0.0, deg_to_rad(-56.8), 1.3},
            {2, 0.0, deg_to_rad(34.9), 1.1},
            {3, 0.0, deg_to_rad(129.0), 1.5},
        };
        return ElementStateTable(2, std::move(s), 26.5e9);
    }

    ElementStateTable ElementStateTable::ideal(int bits)
    {
        if (bits < 1 || bits > 8)
            fail(ErrorCode::invalid_argument, "element table resolution must be 1..8 bits");
        std::vector<ElementState> s;
        const int n = 1 << bits;
        for (int c = 0; c < n; ++c)
            s.push_back({c, 0.0, double(c) * two_pi / double(n), 0.0});
        return ElementStateTable(bits, std::move(s), 27.0e9);
    }

    ElementStateTable ElementStateTable::parse(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        std::vector<ElementState> rows;
        double ref = 26.5e9;
        bool header = false;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            auto content = detail::trim(detail::strip_comment(line));
            if (content.empty())
                continue;
            auto cols = detail::split(content, ',');
            for (auto &c : cols)
                c = detail::trim(c);
            auto where = "element table line " + std::to_string(lineno) + ": ";
            if (!header)
            {
                if (cols.size() != 3 || cols[0] != "code" || cols[1] != "phase_deg" || cols[2] != "loss_db")
                    fail(ErrorCode::parse, where + "expected header 'code,phase_deg,loss_db'");
                header = true;
                continue;
            }
            if (cols.size() == 2 && cols[0] == "reference_freq_hz")
            {
                ref = detail::parse_double(cols[1], where + "reference_freq_hz");
                continue;
            }
            if (cols.size() != 3)
                fail(ErrorCode::parse, where + "expected 3 columns");
            ElementState s;
            s.code = int(detail::parse_int(cols[0], where + "code"));
            s.realized_phase = deg_to_rad(detail::parse_double(cols[1], where + "phase_deg"));
            s.insertion_loss_db = detail::parse_double(cols[2], where + "loss_db");
            rows.push_back(s);
        }
        if (!header)
            fail(ErrorCode::parse, "element table is empty");
        int bits = 0;
        while ((std::size_t(1) << bits) < rows.size())
            ++bits;
        if ((std::size_t(1) << bits) != rows.size() || bits == 0)
            fail(ErrorCode::parse, "element table row count " + std::to_string(rows.size()) + " is not a power of two >= 2");
        return ElementStateTable(bits, std::move(rows), ref);
    }

    ElementStateTable ElementStateTable::load(const std::filesystem::path &path)
    {
        std::ifstream f(path);
        if (!f)
            fail(ErrorCode::io, "cannot open element table '" + path.string() + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str());
    }

    const ElementState &ElementStateTable::state(int code) const
    {
        if (code < 0 || code >= num_states())
            fail(ErrorCode::invalid_argument, "phase code " + std::to_string(code) + " out of range for a " +
                                                  std::to_string(bits_) + "-bit element");
        return entries_[std::size_t(code)];
    }

    double ElementStateTable::mean_insertion_loss_db() const
    {
        double s = 0.0;
        for (const auto &e : entries_)
            s += e.insertion_loss_db;
        return s / double(entries_.size());
    }

    cplx state_coefficient(const ElementStateTable &table, int code, PhaseMode mode)
    {
        const auto &s = table.state(code);
        if (mode == PhaseMode::nominal)
            return std::polar(1.0, s.nominal_phase);
        return std::polar(s.magnitude(), s.realized_phase);
    }

    double CosinePattern::operator()(double off_boresight) const
    {
        double c = std::cos(off_boresight);
        if (c < 0.0)
            return 0.0;
        if (exponent == 0.0)
            return 1.0;
        return std::pow(c, exponent);
    }

    double exponent_from_gain_dbi(double gain_dbi)
    {
        double q = 0.5 * db_to_linear(gain_dbi) - 1.0;
        if (q < 0.0)
            fail(ErrorCode::invalid_argument, "gain " + std::to_string(gain_dbi) +
                                                  " dBi is below the 3.01 dBi hemisphere limit of a cos^q pattern");
        return q;
    }

    GainProfile GainProfile::from_gains(double tx_dbi, double rx_dbi, double ris_rx_side_dbi, double ris_tx_side_dbi)
    {
        GainProfile g;
        g.tx_gain_dbi = tx_dbi;
        g.rx_gain_dbi = rx_dbi;
        g.ris_rx_side_gain_dbi = ris_rx_side_dbi;
        g.ris_tx_side_gain_dbi = ris_tx_side_dbi;
        g.tx_pattern.exponent = exponent_from_gain_dbi(tx_dbi);
        g.rx_pattern.exponent = exponent_from_gain_dbi(rx_dbi);
        g.ris_rx_side_pattern.exponent = exponent_from_gain_dbi(ris_rx_side_dbi);
        g.ris_tx_side_pattern.exponent = exponent_from_gain_dbi(ris_tx_side_dbi);
        return g;
    }

    void GainProfile::validate() const
    {
        for (double g : {tx_gain_dbi, rx_gain_dbi, ris_rx_side_gain_dbi, ris_tx_side_gain_dbi})
            if (!std::isfinite(g))
                fail(ErrorCode::invalid_argument, "antenna gains must be finite");
        for (const auto *p : {&tx_pattern, &rx_pattern, &ris_rx_side_pattern, &ris_tx_side_pattern})
            if (!(p->exponent >= 0.0) || !std::isfinite(p->exponent))
                fail(ErrorCode::invalid_argument, "pattern exponents must be finite and non-negative");
    }

    cplx channel_coefficient(ChannelSide side, const Pose &endpoint, std::size_t m, std::size_t n,
                             const ArrayGeometry &geom, double carrier_hz, const GainProfile &profile)
    {
        const double lambda = wavelength(carrier_hz);
        const double d = exact_distance(endpoint, m, n, geom);
        const bool rx = side == ChannelSide::toward_rx;
        const double gain = db_to_linear(rx ? profile.ris_tx_side_gain_dbi : profile.ris_rx_side_gain_dbi);
        const auto &pattern = rx ? profile.ris_tx_side_pattern : profile.ris_rx_side_pattern;
        const double amp = std::sqrt(lambda * gain * pattern(endpoint.polar()) / (4.0 * pi)) / d;
        return std::polar(amp, -two_pi * std::fmod(d / lambda, 1.0));
    }

    namespace
    {
        // Angle at `from` between its boresight (toward the panel center) and `to`
        double off_boresight(const Vec3 &from, const Vec3 &to)
        {
            Vec3 boresight = Vec3{} - from;
            return angle_between(boresight, to - from);
        }

        void require_front(const Pose &p, const char *what)
        {
            if (!(p.z() > 0.0))
                fail(ErrorCode::invalid_argument, std::string(what) + " must lie in front of the panel (z > 0)");
        }
    }

    CascadeTerms cascade_terms(const LinkParams &link, const ArrayGeometry &geom, const Pose &tx, const Pose &rx)
    {
        require_front(tx, "transmitter");
        require_front(rx, "receiver");
        link.gains.validate();
        if (!(link.transmit_power_w >= 0.0) || !std::isfinite(link.transmit_power_w))
            fail(ErrorCode::invalid_argument, "transmit power must be finite and non-negative");

        const double lambda = wavelength(link.carrier_hz);
        const auto &g = link.gains;
        CascadeTerms out;
        const double gain = db_to_linear(g.tx_gain_dbi + g.ris_rx_side_gain_dbi + g.ris_tx_side_gain_dbi + g.rx_gain_dbi);
        out.prefactor = link.transmit_power_w * gain * lambda * lambda / (16.0 * pi * pi);
        out.weights.reserve(geom.size());

        const Vec3 normal{0.0, 0.0, 1.0};
        for (std::size_t m = 0; m < geom.num_x(); ++m)
            for (std::size_t n = 0; n < geom.num_y(); ++n)
            {
                const Vec3 e = element_position(m, n, geom);
                const double dt = exact_distance(tx, m, n, geom);
                const double dr = exact_distance(rx, m, n, geom);
                const double f = g.tx_pattern(off_boresight(tx.position(), e)) *
                                 g.ris_rx_side_pattern(angle_between(normal, tx.position() - e)) *
                                 g.ris_tx_side_pattern(angle_between(normal, rx.position() - e)) *
                                 g.rx_pattern(off_boresight(rx.position(), e));
                const double cycles = std::fmod(dt / lambda, 1.0) + std::fmod(dr / lambda, 1.0);
                out.weights.push_back(std::polar(std::sqrt(f) / (dt * dr), -two_pi * cycles));
            }
        return out;
    }

    double received_power(const CascadeTerms &terms, std::span<const cplx> response)
    {
        if (response.size() != terms.weights.size())
            fail(ErrorCode::invalid_argument, "panel response has " + std::to_string(response.size()) +
                                                  " elements, geometry has " + std::to_string(terms.weights.size()));
        cplx sum = 0.0;
        for (std::size_t i = 0; i < response.size(); ++i)
            sum += terms.weights[i] * response[i];
        return terms.prefactor * std::norm(sum);
    }

    double received_power(const LinkParams &link, const ArrayGeometry &geom, std::span<const cplx> response,
                          const Pose &tx, const Pose &rx)
    {
        return received_power(cascade_terms(link, geom, tx, rx), response);
    }

    std::vector<cplx> continuous_response(std::span<const double> phases)
    {
        std::vector<cplx> r;
        r.reserve(phases.size());
        for (double p : phases)
            r.push_back(std::polar(1.0, p));
        return r;
    }

    cplx feed_illumination(const Pose &feed, std::size_t m, std::size_t n, const ArrayGeometry &geom,
                           double carrier_hz, double exponent)
    {
        require_front(feed, "feed");
        if (!(exponent >= 0.0))
            fail(ErrorCode::invalid_argument, "feed exponent must be non-negative");
        const double lambda = wavelength(carrier_hz);
        const double d = exact_distance(feed, m, n, geom);
        const double psi = off_boresight(feed.position(), element_position(m, n, geom));
        const double taper = CosinePattern{exponent}(psi);
        return std::polar(taper / d, -two_pi * std::fmod(d / lambda, 1.0));
    }
}

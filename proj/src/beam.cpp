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

#include "tris/beam.hpp"
#include "tris/common.hpp"

#include <algorithm>
#include <random>
#include <optional>
#include <ostream>

namespace tris
{
    namespace
    {
        void check_bits(int bits)
        {
            if (bits < 1 || bits > 16)
                fail(ErrorCode::invalid_argument, "phase resolution must be 1..16 bits, got " + std::to_string(bits));
        }

        // Gamma exp(j phi) for every code
        std::vector<cplx> state_lut(int bits, PhaseMode mode, const ElementStateTable *table)
        {
            const int states = 1 << bits;
            std::vector<cplx> lut(static_cast<std::size_t>(states));
            if (mode == PhaseMode::nominal)
            {
                for (int c = 0; c < states; ++c)
                    lut[std::size_t(c)] = std::polar(1.0, double(c) * two_pi / double(states));
                return lut;
            }
            if (table == nullptr)
                fail(ErrorCode::invalid_argument, "realized mode needs an element state table");
            if (table->bits() != bits)
                fail(ErrorCode::unsupported_configuration, "element table has " + std::to_string(table->bits()) +
                                                               " bits, codebook has " + std::to_string(bits));
            for (int c = 0; c < states; ++c)
                lut[std::size_t(c)] = state_coefficient(*table, c, PhaseMode::realized);
            return lut;
        }
    }

    RISConfiguration::RISConfiguration(ArrayGeometry geom, int bits)
        : geom_(geom), bits_(bits), codes_(geom.size(), 0)
    {
        check_bits(bits);
    }

    RISConfiguration::RISConfiguration(ArrayGeometry geom, int bits, std::vector<int> codes)
        : geom_(geom), bits_(bits), codes_(std::move(codes))
    {
        check_bits(bits);
        if (codes_.size() != geom_.size())
            fail(ErrorCode::invalid_argument, "code grid has " + std::to_string(codes_.size()) + " entries, panel has " +
                                                  std::to_string(geom_.size()));
        for (int c : codes_)
            if (c < 0 || c >= num_states())
                fail(ErrorCode::invalid_argument, "phase code " + std::to_string(c) + " out of range");
    }

    void RISConfiguration::set_code(std::size_t m, std::size_t n, int code)
    {
        if (code < 0 || code >= num_states())
            fail(ErrorCode::invalid_argument, "phase code " + std::to_string(code) + " out of range");
        geom_.offset_x(m);
        geom_.offset_y(n);
        codes_[geom_.index(m, n)] = code;
    }

    double RISConfiguration::nominal_phase(std::size_t m, std::size_t n) const
    {
        return double(code(m, n)) * two_pi / double(num_states());
    }

    std::vector<cplx> RISConfiguration::response(PhaseMode mode, const ElementStateTable *table) const
    {
        const auto lut = state_lut(bits_, mode, table);
        std::vector<cplx> out;
        out.reserve(codes_.size());
        for (int c : codes_)
            out.push_back(lut[std::size_t(c)]);
        return out;
    }

    bool RISConfiguration::operator==(const RISConfiguration &o) const
    {
        return bits_ == o.bits_ && geom_.num_x() == o.geom_.num_x() && geom_.num_y() == o.geom_.num_y() &&
               geom_.spacing_x() == o.geom_.spacing_x() && geom_.spacing_y() == o.geom_.spacing_y() && codes_ == o.codes_;
    }

    void BeamSpec::validate() const
    {
        if (!(phase_offset >= 0.0 && phase_offset < two_pi))
            fail(ErrorCode::invalid_argument, "phase offset must lie in [0, 2 pi)");
    }

    DistanceModel resolve_model(DistanceModel model, const Pose &endpoint, const ArrayGeometry &geom, double carrier_hz)
    {
        if (model != DistanceModel::automatic)
            return model;
        return endpoint.range() >= fraunhofer_distance(geom, carrier_hz) ? DistanceModel::planar : DistanceModel::spherical;
    }

    namespace
    {
        // Path length to element (m, n) minus the center-ray length
        double relative_path(const Pose &p, DistanceModel model, std::size_t m, std::size_t n, const ArrayGeometry &geom)
        {
            if (model == DistanceModel::planar)
                return planar_distance(p, m, n, geom) - p.range();
            return exact_distance(p, m, n, geom) - p.range();
        }
    }

    double optimal_phase(std::size_t m, std::size_t n, const BeamSpec &spec, const ArrayGeometry &geom, double carrier_hz)
    {
        spec.validate();
        const double lambda = wavelength(carrier_hz);
        const auto tm = resolve_model(spec.tx_model, spec.tx, geom, carrier_hz);
        const auto rm = resolve_model(spec.rx_model, spec.rx, geom, carrier_hz);
        const double path = relative_path(spec.tx, tm, m, n, geom) + relative_path(spec.rx, rm, m, n, geom);
        return wrap_two_pi(spec.phase_offset + two_pi * path / lambda);
    }

    std::vector<double> optimal_phases(const BeamSpec &spec, const ArrayGeometry &geom, double carrier_hz)
    {
        std::vector<double> out;
        out.reserve(geom.size());
        for (std::size_t m = 0; m < geom.num_x(); ++m)
            for (std::size_t n = 0; n < geom.num_y(); ++n)
                out.push_back(optimal_phase(m, n, spec, geom, carrier_hz));
        return out;
    }

    int quantize_phase(double phase, int bits)
    {
        if (bits < 1 || bits > 16)
            fail(ErrorCode::invalid_argument, "phase resolution must be 1..16 bits, got " + std::to_string(bits));
        if (!std::isfinite(phase))
            fail(ErrorCode::invalid_argument, "phase must be finite");
        const int n = 1 << bits;
        const double pos = wrap_two_pi(phase) / (two_pi / double(n)); // in [0, n)
        const double lo = std::floor(pos);
        const double frac = pos - lo;
        const int lo_code = int(lo) % n;
        const int hi_code = (lo_code + 1) % n;
        if (frac < 0.5)
            return lo_code;
        if (frac > 0.5)
            return hi_code;
        return std::min(lo_code, hi_code);
    }

    RISConfiguration quantize_phases(std::span<const double> phases, const ArrayGeometry &geom, int bits)
    {
        std::vector<int> codes;
        codes.reserve(phases.size());
        for (double p : phases)
            codes.push_back(quantize_phase(p, bits));
        return RISConfiguration(geom, bits, std::move(codes));
    }

    RISConfiguration synthesize_codebook(const BeamSpec &spec, const ArrayGeometry &geom, double carrier_hz, int bits)
    {
        auto phases = optimal_phases(spec, geom, carrier_hz);
        return quantize_phases(phases, geom, bits);
    }

    SweepResult synthesize_codebook_swept(const BeamSpec &spec, const ArrayGeometry &geom, int bits,
                                          const PowerModel &model, int samples)
    {
        if (samples < 1)
            fail(ErrorCode::invalid_argument, "offset sweep needs at least one sample");
        BeamSpec base = spec;
        base.phase_offset = 0.0;
        const auto phases = optimal_phases(base, geom, model.link.carrier_hz);
        const auto terms = cascade_terms(model.link, geom, spec.tx, spec.rx);
        const double step = two_pi / double(1 << bits);

        std::vector<double> shifted(phases.size());
        std::optional<SweepResult> best;
        for (int k = 0; k < samples; ++k)
        {
            const double c = step * double(k) / double(samples);
            for (std::size_t i = 0; i < phases.size(); ++i)
                shifted[i] = phases[i] + c;
            auto config = quantize_phases(shifted, geom, bits);
            const double p = received_power(terms, config.response(model.mode, model.table));
            if (!best || p > best->power)
                best = SweepResult{std::move(config), c, p};
        }
        return std::move(*best);
    }

    OracleResult exhaustive_oracle(const BeamSpec &spec, const ArrayGeometry &geom, int bits, const PowerModel &model)
    {
        check_bits(bits);
        const std::size_t n = geom.size();
        const std::uint64_t states = std::uint64_t(1) << bits;
        if (double(bits) * double(n) > 20.0)
            fail(ErrorCode::capacity, "exhaustive search over " + std::to_string(n) + " elements at " + std::to_string(bits) +
                                          " bits exceeds 2^20 configurations");
        const std::uint64_t total = std::uint64_t(1) << (std::uint64_t(bits) * n);

        const auto terms = cascade_terms(model.link, geom, spec.tx, spec.rx);
        const auto lut = state_lut(bits, model.mode, model.table);

        std::vector<int> codes(n, 0);
        std::vector<int> best_codes = codes;
        double best = -1.0;
        for (std::uint64_t idx = 0; idx < total; ++idx)
        {
            // Element 0 is the most significant digit, so idx order is lexicographic
            std::uint64_t rest = idx;
            for (std::size_t i = n; i-- > 0;)
            {
                codes[i] = int(rest % states);
                rest /= states;
            }
            cplx sum = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                sum += terms.weights[i] * lut[std::size_t(codes[i])];
            const double p = terms.prefactor * std::norm(sum);
            if (p > best)
            {
                best = p;
                best_codes = codes;
            }
        }
        return {RISConfiguration(geom, bits, std::move(best_codes)), best};
    }

    OracleTrialStats oracle_trials(std::uint64_t seed, int trials, const ArrayGeometry &geom, int bits,
                                   const PowerModel &model, int samples)
    {
        if (trials < 1)
            fail(ErrorCode::invalid_argument, "trial count must be positive");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> range(0.02, 2.0), polar(0.0, deg_to_rad(60.0)), azimuth(0.0, two_pi);
        auto random_pose = [&]
        {
            const double r = range(rng), t = polar(rng);
            return Pose::spherical(r, t, azimuth(rng));
        };
        OracleTrialStats stats{trials, 0.0, 0.0, 0.0};
        for (int i = 0; i < trials; ++i)
        {
            BeamSpec spec;
            spec.tx = random_pose();
            spec.rx = random_pose();
            const auto swept = synthesize_codebook_swept(spec, geom, bits, model, samples);
            const auto fine = synthesize_codebook_swept(spec, geom, bits, model, 16 * samples);
            const auto oracle = exhaustive_oracle(spec, geom, bits, model);
            const double gap = linear_to_db(oracle.power / swept.power);
            stats.max_oracle_gap_db = std::max(stats.max_oracle_gap_db, gap);
            stats.mean_oracle_gap_db += gap / trials;
            stats.max_sweep_gap_db = std::max(stats.max_sweep_gap_db, linear_to_db(fine.power / swept.power));
        }
        return stats;
    }

    double quantization_loss(const ArrayGeometry &geom, const BeamSpec &spec, int bits, const LinkParams &link, int samples)
    {
        const auto terms = cascade_terms(link, geom, spec.tx, spec.rx);
        const auto phases = optimal_phases(spec, geom, link.carrier_hz);
        const double continuous = received_power(terms, continuous_response(phases));
        PowerModel model{link, PhaseMode::nominal, nullptr};
        const auto swept = synthesize_codebook_swept(spec, geom, bits, model, samples);
        if (!(continuous > 0.0) || !(swept.power > 0.0))
            fail(ErrorCode::invalid_argument, "quantization loss undefined for a link with zero received power");
        return linear_to_db(continuous / swept.power);
    }

    std::vector<std::uint8_t> encode_bias_bitstream(const RISConfiguration &config)
    {
        if (config.bits() != 2)
            fail(ErrorCode::unsupported_configuration, "bias bitstream is defined for 2-bit panels only");
        std::vector<std::uint8_t> bits;
        bits.reserve(2 * config.codes().size());
        for (int c : config.codes())
        {
            bits.push_back(std::uint8_t((c >> 1) & 1)); // 180 deg dipole line
            bits.push_back(std::uint8_t(c & 1));        // 90 deg phase-shifter line
        }
        return bits;
    }

    RISConfiguration decode_bias_bitstream(const std::vector<std::uint8_t> &bits, const ArrayGeometry &geom)
    {
        if (bits.size() != 2 * geom.size())
            fail(ErrorCode::invalid_argument, "bias bitstream has " + std::to_string(bits.size()) + " bits, panel needs " +
                                                  std::to_string(2 * geom.size()));
        std::vector<int> codes;
        codes.reserve(geom.size());
        for (std::size_t i = 0; i < geom.size(); ++i)
        {
            if (bits[2 * i] > 1 || bits[2 * i + 1] > 1)
                fail(ErrorCode::invalid_argument, "bias bitstream entries must be 0 or 1");
            codes.push_back(int(bits[2 * i]) << 1 | int(bits[2 * i + 1]));
        }
        return RISConfiguration(geom, 2, std::move(codes));
    }

    std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t> &bits)
    {
        std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i])
                bytes[i / 8] |= std::uint8_t(0x80u >> (i % 8));
        return bytes;
    }

    std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t> &bytes, std::size_t num_bits)
    {
        if (num_bits > 8 * bytes.size())
            fail(ErrorCode::invalid_argument, "not enough bytes for the requested bit count");
        std::vector<std::uint8_t> bits(num_bits);
        for (std::size_t i = 0; i < num_bits; ++i)
            bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
        return bits;
    }

    std::string to_hex(const std::vector<std::uint8_t> &bytes)
    {
        static const char *digits = "0123456789abcdef";
        std::string s;
        s.reserve(2 * bytes.size());
        for (auto b : bytes)
        {
            s.push_back(digits[b >> 4]);
            s.push_back(digits[b & 0xf]);
        }
        return s;
    }

    void write_codebook_csv(const RISConfiguration &config, std::ostream &out)
    {
        const auto &g = config.geometry();
        for (std::size_t m = 0; m < g.num_x(); ++m)
        {
            for (std::size_t n = 0; n < g.num_y(); ++n)
                out << (n ? "," : "") << config.code(m, n);
            out << '\n';
        }
    }
}

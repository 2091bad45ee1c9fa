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

#ifndef TRIS_BEAM_HPP
#define TRIS_BEAM_HPP

#include "tris/channel.hpp"
#include "tris/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tris
{
    // Grid of b-bit phase codes over a panel. Code c selects the nominal phase
    // c * 2 pi / 2^b.
    class RISConfiguration
    {
    public:
        RISConfiguration(ArrayGeometry geom, int bits); // all codes 0
        RISConfiguration(ArrayGeometry geom, int bits, std::vector<int> codes);

        const ArrayGeometry &geometry() const noexcept { return geom_; }
        int bits() const noexcept { return bits_; }
        int num_states() const noexcept { return 1 << bits_; }
        const std::vector<int> &codes() const noexcept { return codes_; }

        int code(std::size_t m, std::size_t n) const { return codes_.at(geom_.index(m, n)); }
        void set_code(std::size_t m, std::size_t n, int code);
        double nominal_phase(std::size_t m, std::size_t n) const;

        // Per-element Gamma exp(j phi). Nominal mode needs no table; realized
        // mode requires a table with matching resolution.
        std::vector<cplx> response(PhaseMode mode, const ElementStateTable *table = nullptr) const;

        bool operator==(const RISConfiguration &o) const;

    private:
        ArrayGeometry geom_;
        int bits_;
        std::vector<int> codes_;
    };

    enum class DistanceModel
    {
        automatic, // plane wave at or beyond the Fraunhofer distance, spherical inside it
        spherical,
        planar
    };

    struct BeamSpec
    {
        Pose tx = Pose::spherical(2.6, 0.0, 0.0);
        Pose rx = Pose::spherical(0.05, 0.0, 0.0);
        DistanceModel tx_model = DistanceModel::automatic;
        DistanceModel rx_model = DistanceModel::automatic;
        double phase_offset = 0.0; // C in [0, 2 pi)

        void validate() const;
    };

    // Resolves `automatic` against the panel's Fraunhofer distance
    DistanceModel resolve_model(DistanceModel model, const Pose &endpoint, const ArrayGeometry &geom, double carrier_hz);

    // Phase that co-phases element (m, n): C + 2 pi (dt + dr) / lambda reduced to
    // [0, 2 pi). Path lengths are taken relative to the center-ray lengths; the
    // dropped constant is absorbed by C.
    double optimal_phase(std::size_t m, std::size_t n, const BeamSpec &spec, const ArrayGeometry &geom, double carrier_hz);
    std::vector<double> optimal_phases(const BeamSpec &spec, const ArrayGeometry &geom, double carrier_hz);

    // Nearest point of the 2^b grid on the unit circle; exact midpoints go to
    // the lower code
    int quantize_phase(double phase, int bits);

    RISConfiguration quantize_phases(std::span<const double> phases, const ArrayGeometry &geom, int bits);

    RISConfiguration synthesize_codebook(const BeamSpec &spec, const ArrayGeometry &geom, double carrier_hz, int bits);

    // Context for scoring codebooks by received power
    struct PowerModel
    {
        LinkParams link;
        PhaseMode mode = PhaseMode::nominal;
        const ElementStateTable *table = nullptr; // needed in realized mode
    };

    struct SweepResult
    {
        RISConfiguration config;
        double phase_offset; // winning C
        double power;        // [W]
    };

    // Synthesizes one codebook per C in {k * step / samples}, k < samples, with
    // step = 2 pi / 2^b, and keeps the one with the highest received power.
    // Earlier (smaller) C wins ties.
    SweepResult synthesize_codebook_swept(const BeamSpec &spec, const ArrayGeometry &geom, int bits,
                                          const PowerModel &model, int samples = 64);

    struct OracleResult
    {
        RISConfiguration config;
        double power; // [W]
    };

    inline constexpr std::uint64_t oracle_max_configurations = std::uint64_t(1) << 20;

    // Brute force over every code grid. Ties go to the lexicographically
    // smallest grid (row-major order).
    OracleResult exhaustive_oracle(const BeamSpec &spec, const ArrayGeometry &geom, int bits, const PowerModel &model);

    struct OracleTrialStats
    {
        int trials;
        double max_oracle_gap_db;  // exhaustive optimum over the swept codebook
        double mean_oracle_gap_db;
        double max_sweep_gap_db;   // 16x finer C sweep over the default sweep
    };

    // Random endpoint pairs (range 0.02..2 m, polar 0..60 deg, any azimuth on
    // each side) scored by the swept synthesizer against the exhaustive oracle
    OracleTrialStats oracle_trials(std::uint64_t seed, int trials, const ArrayGeometry &geom, int bits,
                                   const PowerModel &model, int samples = 64);

    // 10 log10(P_continuous / P_quantized) with the quantized codebook taken at
    // the best C of the sweep. Always evaluated in nominal mode.
    double quantization_loss(const ArrayGeometry &geom, const BeamSpec &spec, int bits, const LinkParams &link,
                             int samples = 64);

    // Two control lines per 2-bit element, row-major (m outer): first the 180 deg
    // dipole line (code bit 1), then the 90 deg phase-shifter line (code bit 0)
    std::vector<std::uint8_t> encode_bias_bitstream(const RISConfiguration &config);
    RISConfiguration decode_bias_bitstream(const std::vector<std::uint8_t> &bits, const ArrayGeometry &geom);

    // Big-endian packing: bit 0 is the most significant bit of byte 0
    std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t> &bits);
    std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t> &bytes, std::size_t num_bits);
    std::string to_hex(const std::vector<std::uint8_t> &bytes);

    // Grid of integer codes, one panel row (fixed m) per line
    void write_codebook_csv(const RISConfiguration &config, std::ostream &out);
}

#endif

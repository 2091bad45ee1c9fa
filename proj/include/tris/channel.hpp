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

#ifndef TRIS_CHANNEL_HPP
#define TRIS_CHANNEL_HPP

#include "tris/geometry.hpp"

#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tris
{
    using cplx = std::complex<double>;

    enum class PhaseMode
    {
        nominal, // ideal lossless states on the 2^b grid
        realized // per-state loss and phase from the element table
    };

    struct ElementState
    {
        int code = 0;
        double nominal_phase = 0.0;  // [rad], code * 2 pi / 2^b
        double realized_phase = 0.0; // [rad]
        double insertion_loss_db = 0.0;

        double magnitude() const { return std::pow(10.0, -insertion_loss_db / 20.0); }
    };

    // Behavioral response of a b-bit element: one entry per switching state
    class ElementStateTable
    {
    public:
        // Entries must cover codes 0 .. 2^bits - 1 exactly once (any order)
        ElementStateTable(int bits, std::vector<ElementState> entries, double reference_freq_hz);

        // Simulated 2-bit element at 26.5 GHz (phases -141.2, -56.8, 34.9, 129.0 deg;
        // losses 1.1, 1.3, 1.1, 1.5 dB)
        static ElementStateTable default_2bit();

        // Lossless ideal table for any resolution; realized == nominal
        static ElementStateTable ideal(int bits);

        // Text format: '#' comments, a header "code,phase_deg,loss_db", one row per code.
        // An optional "reference_freq_hz,<value>" row sets the reference frequency.
        static ElementStateTable parse(const std::string &text);
        static ElementStateTable load(const std::filesystem::path &path);

        int bits() const noexcept { return bits_; }
        int num_states() const noexcept { return 1 << bits_; }
        double reference_freq_hz() const noexcept { return reference_freq_hz_; }
        const ElementState &state(int code) const;
        const std::vector<ElementState> &states() const noexcept { return entries_; }
        double mean_insertion_loss_db() const;

    private:
        int bits_;
        std::vector<ElementState> entries_; // indexed by code
        double reference_freq_hz_;
    };

    // Gamma * exp(j phi) for a code
    cplx state_coefficient(const ElementStateTable &table, int code, PhaseMode mode);

    // Normalized cos^q power pattern; 1 at boresight, 0 beyond 90 deg
    struct CosinePattern
    {
        double exponent = 0.0;
        double operator()(double off_boresight) const;
    };

    // q such that a cos^q hemisphere pattern has peak gain G: G = 2 (q + 1)
    double exponent_from_gain_dbi(double gain_dbi);

    // Antenna gains and patterns along the cascade: Tx horn, RIS receive side
    // (facing the Tx), RIS transmit side (facing the Rx), Rx horn
    struct GainProfile
    {
        double tx_gain_dbi = 22.7;
        double rx_gain_dbi = 12.7;
        double ris_rx_side_gain_dbi = 5.0;
        double ris_tx_side_gain_dbi = 5.0;
        CosinePattern tx_pattern{exponent_from_gain_dbi(22.7)};
        CosinePattern rx_pattern{exponent_from_gain_dbi(12.7)};
        CosinePattern ris_rx_side_pattern{exponent_from_gain_dbi(5.0)};
        CosinePattern ris_tx_side_pattern{exponent_from_gain_dbi(5.0)};

        // Exponents derived from the gains
        static GainProfile from_gains(double tx_dbi, double rx_dbi, double ris_rx_side_dbi, double ris_tx_side_dbi);
        void validate() const;
    };

    // Inputs to the received-power expression that do not depend on the panel state
    struct LinkParams
    {
        double transmit_power_w = 1.0;
        double carrier_hz = 27.0e9;
        GainProfile gains;
    };

    enum class ChannelSide
    {
        toward_rx, // RIS-Rx channel, uses the transmit-side gain
        toward_tx  // Tx-RIS channel, uses the receive-side gain
    };

    // sqrt(lambda G F / 4 pi) exp(-j 2 pi d / lambda) / d with d the spherical distance
    // to element (m, n) and F evaluated at the endpoint direction from the panel center
    cplx channel_coefficient(ChannelSide side, const Pose &endpoint, std::size_t m, std::size_t n,
                             const ArrayGeometry &geom, double carrier_hz, const GainProfile &profile);

    // Per-element cascade weights such that
    //   P_r = prefactor * |sum_i weight_i * response_i|^2
    // with prefactor = P_t G_t G_f G_g G_r lambda^2 / (16 pi^2) and
    // weight = sqrt(F_i) exp(-j 2 pi (d_t + d_r) / lambda) / (d_t d_r).
    // F_i multiplies the four normalized patterns evaluated along element i's
    // own Tx and Rx rays; the horns are pointed at the panel center.
    struct CascadeTerms
    {
        double prefactor = 0.0;
        std::vector<cplx> weights; // row-major, m outer
    };

    CascadeTerms cascade_terms(const LinkParams &link, const ArrayGeometry &geom, const Pose &tx, const Pose &rx);

    // Received power for an arbitrary per-element response Gamma * exp(j phi)
    double received_power(const CascadeTerms &terms, std::span<const cplx> response);
    double received_power(const LinkParams &link, const ArrayGeometry &geom, std::span<const cplx> response,
                          const Pose &tx, const Pose &rx);

    // Per-element response for phases on the continuous circle (magnitude 1)
    std::vector<cplx> continuous_response(std::span<const double> phases);

    // Excitation of element (m, n) by a feed horn pointed at the panel center:
    // cos^q(psi) exp(-j 2 pi d / lambda) / d, psi measured at the feed
    cplx feed_illumination(const Pose &feed, std::size_t m, std::size_t n, const ArrayGeometry &geom,
                           double carrier_hz, double exponent);
}

#endif

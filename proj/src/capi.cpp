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

#include "tris/tris.h"

#include "tris/common.hpp"
#include "tris/config.hpp"
#include "tris/link.hpp"
#include "tris/pattern.hpp"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

struct tris_config
{
    tris::RunConfig cfg;
};

struct tris_codebook
{
    tris::SweepResult result;
};

struct tris_pattern
{
    tris::RadiationPattern pattern;
};

namespace
{
    thread_local std::string last_error;

    tris_status to_status(tris::ErrorCode c)
    {
        return static_cast<tris_status>(static_cast<int>(c));
    }

    // Runs f, translating exceptions into a status and the thread's message
    template <class F>
    tris_status guard(F &&f)
    {
        try
        {
            f();
            last_error.clear();
            return TRIS_OK;
        }
        catch (const tris::Error &e)
        {
            last_error = e.what();
            return to_status(e.code());
        }
        catch (const std::bad_alloc &)
        {
            last_error = "out of memory";
            return TRIS_E_INTERNAL;
        }
        catch (const std::exception &e)
        {
            last_error = e.what();
            return TRIS_E_INTERNAL;
        }
    }

    template <class... P>
    void require(const P *...ptrs)
    {
        if (((ptrs == nullptr) || ...))
            tris::fail(tris::ErrorCode::invalid_argument, "null pointer argument");
    }

    void copy_string(const std::string &s, char *buf, size_t cap, size_t *needed)
    {
        require(needed);
        *needed = s.size();
        if (buf == nullptr || cap < s.size() + 1)
            tris::fail(tris::ErrorCode::capacity, "buffer of " + std::to_string(cap) + " bytes cannot hold " +
                                                      std::to_string(s.size() + 1));
        std::memcpy(buf, s.c_str(), s.size() + 1);
    }

    const tris::LinkScenario &scenario_at(const tris_config *c, size_t i)
    {
        require(c);
        if (i >= c->cfg.scenarios.size())
            tris::fail(tris::ErrorCode::invalid_argument, "scenario index " + std::to_string(i) + " out of range");
        return c->cfg.scenarios[i].scenario;
    }

    tris::LinkParams beam_link(const tris::RunConfig &cfg)
    {
        return tris::LinkParams{1.0, cfg.carrier_hz, cfg.link_defaults.gains};
    }

    tris::AngularGrid make_grid(tris_grid grid, double step)
    {
        switch (grid)
        {
        case TRIS_GRID_CUT_E:
            return tris::AngularGrid::cut(0.0, step);
        case TRIS_GRID_CUT_H:
            return tris::AngularGrid::cut(tris::pi / 2.0, step);
        case TRIS_GRID_HEMISPHERE:
            return tris::AngularGrid::hemisphere(step, step);
        }
        tris::fail(tris::ErrorCode::invalid_argument, "unknown grid kind");
    }

    std::ofstream open_out(const char *path, std::ios::openmode mode = std::ios::out)
    {
        require(path);
        std::ofstream f(path, mode);
        if (!f)
            tris::fail(tris::ErrorCode::io, std::string("cannot write '") + path + "'");
        return f;
    }
}

extern "C" {

const char *tris_version(void) { return TRIS_VERSION_STRING; }

const char *tris_last_error(void) { return last_error.c_str(); }

const char *tris_status_name(tris_status status)
{
    switch (status)
    {
    case TRIS_OK:
        return "ok";
    case TRIS_E_INVALID_ARGUMENT:
        return "invalid argument";
    case TRIS_E_DEGENERATE_GEOMETRY:
        return "degenerate geometry";
    case TRIS_E_CAPACITY:
        return "capacity exceeded";
    case TRIS_E_UNSUPPORTED:
        return "unsupported configuration";
    case TRIS_E_RESOLUTION:
        return "insufficient resolution";
    case TRIS_E_METRIC_UNDEFINED:
        return "metric undefined";
    case TRIS_E_INFEASIBLE_TARGET:
        return "infeasible target";
    case TRIS_E_PARSE:
        return "parse error";
    case TRIS_E_IO:
        return "i/o error";
    default:
        return "internal error";
    }
}

tris_status tris_config_default(tris_config **out)
{
    return guard([&] {
        require(out);
        *out = new tris_config{tris::RunConfig::defaults()};
    });
}

tris_status tris_config_load(const char *path, int lenient, tris_config **out)
{
    return guard([&] {
        require(path, out);
        *out = new tris_config{tris::RunConfig::load(path, lenient != 0)};
    });
}

tris_status tris_config_parse(const char *text, const char *base_dir, int lenient, tris_config **out)
{
    return guard([&] {
        require(text, out);
        *out = new tris_config{tris::RunConfig::parse(text, base_dir ? base_dir : "", lenient != 0)};
    });
}

void tris_config_free(tris_config *config) { delete config; }

tris_status tris_config_describe(const tris_config *config, char *buf, size_t cap, size_t *needed)
{
    return guard([&] {
        require(config);
        copy_string(config->cfg.describe(), buf, cap, needed);
    });
}

tris_status tris_config_warning_count(const tris_config *config, size_t *count)
{
    return guard([&] {
        require(config, count);
        *count = config->cfg.warnings.size();
    });
}

tris_status tris_config_warning(const tris_config *config, size_t index, char *buf, size_t cap, size_t *needed)
{
    return guard([&] {
        require(config);
        if (index >= config->cfg.warnings.size())
            tris::fail(tris::ErrorCode::invalid_argument, "warning index out of range");
        copy_string(config->cfg.warnings[index], buf, cap, needed);
    });
}

tris_status tris_config_panel(const tris_config *config, size_t *num_x, size_t *num_y, double *spacing_x_m,
                              double *spacing_y_m, double *carrier_hz)
{
    return guard([&] {
        require(config, num_x, num_y, spacing_x_m, spacing_y_m, carrier_hz);
        const auto &g = config->cfg.geometry;
        *num_x = g.num_x();
        *num_y = g.num_y();
        *spacing_x_m = g.spacing_x();
        *spacing_y_m = g.spacing_y();
        *carrier_hz = config->cfg.carrier_hz;
    });
}

tris_status tris_config_bits(const tris_config *config, int *bits)
{
    return guard([&] {
        require(config, bits);
        *bits = config->cfg.bits;
    });
}

tris_status tris_config_set_bits(tris_config *config, int bits)
{
    return guard([&] {
        require(config);
        if (bits < 1 || bits > 16)
            tris::fail(tris::ErrorCode::invalid_argument, "bits must lie in 1..16");
        config->cfg.bits = bits;
    });
}

tris_status tris_config_set_mode(tris_config *config, int realized)
{
    return guard([&] {
        require(config);
        auto &cfg = config->cfg;
        cfg.mode = realized ? tris::PhaseMode::realized : tris::PhaseMode::nominal;
        cfg.link_defaults.mode = cfg.mode;
        for (auto &e : cfg.scenarios)
            e.scenario.mode = cfg.mode;
    });
}

tris_status tris_config_beam_target(const tris_config *config, double *range_m, double *polar_deg,
                                    double *azimuth_deg)
{
    return guard([&] {
        require(config, range_m, polar_deg, azimuth_deg);
        const auto &tx = config->cfg.beam.tx;
        *range_m = tx.range();
        *polar_deg = tris::rad_to_deg(tx.polar());
        *azimuth_deg = tris::rad_to_deg(tx.azimuth());
    });
}

tris_status tris_config_set_beam_target(tris_config *config, double range_m, double polar_deg, double azimuth_deg)
{
    return guard([&] {
        require(config);
        auto beam = config->cfg.beam;
        beam.tx = tris::Pose::spherical(range_m, tris::deg_to_rad(polar_deg), tris::deg_to_rad(azimuth_deg));
        beam.validate();
        config->cfg.beam = beam;
    });
}

tris_status tris_codebook_synthesize(const tris_config *config, tris_codebook **out)
{
    return guard([&] {
        require(config, out);
        const auto &cfg = config->cfg;
        tris::PowerModel model{beam_link(cfg), cfg.mode,
                               cfg.mode == tris::PhaseMode::realized ? &cfg.element_table : nullptr};
        *out = new tris_codebook{
            tris::synthesize_codebook_swept(cfg.beam, cfg.geometry, cfg.bits, model, cfg.link_defaults.offset_samples)};
    });
}

void tris_codebook_free(tris_codebook *codebook) { delete codebook; }

tris_status tris_codebook_dims(const tris_codebook *codebook, size_t *num_x, size_t *num_y, int *bits)
{
    return guard([&] {
        require(codebook, num_x, num_y, bits);
        const auto &c = codebook->result.config;
        *num_x = c.geometry().num_x();
        *num_y = c.geometry().num_y();
        *bits = c.bits();
    });
}

tris_status tris_codebook_codes(const tris_codebook *codebook, int *codes, size_t cap)
{
    return guard([&] {
        require(codebook, codes);
        const auto &v = codebook->result.config.codes();
        if (cap < v.size())
            tris::fail(tris::ErrorCode::capacity, "code buffer holds " + std::to_string(cap) + " of " +
                                                      std::to_string(v.size()) + " entries");
        std::copy(v.begin(), v.end(), codes);
    });
}

tris_status tris_codebook_phase_offset(const tris_codebook *codebook, double *offset_deg)
{
    return guard([&] {
        require(codebook, offset_deg);
        *offset_deg = tris::rad_to_deg(codebook->result.phase_offset);
    });
}

tris_status tris_codebook_write_csv(const tris_codebook *codebook, const char *path)
{
    return guard([&] {
        require(codebook);
        auto f = open_out(path);
        tris::write_codebook_csv(codebook->result.config, f);
        if (!f.flush())
            tris::fail(tris::ErrorCode::io, std::string("write to '") + path + "' failed");
    });
}

tris_status tris_codebook_bias(const tris_codebook *codebook, unsigned char *bytes, size_t cap, size_t *num_bits)
{
    return guard([&] {
        require(codebook, num_bits);
        const auto bits = tris::encode_bias_bitstream(codebook->result.config);
        const auto packed = tris::pack_bits(bits);
        *num_bits = bits.size();
        if (bytes == nullptr || cap < packed.size())
            tris::fail(tris::ErrorCode::capacity, "bias buffer needs " + std::to_string(packed.size()) + " bytes");
        std::copy(packed.begin(), packed.end(), bytes);
    });
}

tris_status tris_codebook_write_bias(const tris_codebook *codebook, const char *path)
{
    return guard([&] {
        require(codebook);
        const auto packed = tris::pack_bits(tris::encode_bias_bitstream(codebook->result.config));
        auto f = open_out(path, std::ios::out | std::ios::binary);
        f.write(reinterpret_cast<const char *>(packed.data()), std::streamsize(packed.size()));
        if (!f.flush())
            tris::fail(tris::ErrorCode::io, std::string("write to '") + path + "' failed");
    });
}

tris_status tris_pattern_compute(const tris_config *config, const tris_codebook *codebook, tris_grid grid,
                                 double step_deg, int array_factor_only, tris_pattern **out)
{
    return guard([&] {
        require(config, codebook, out);
        if (!(step_deg > 0.0))
            tris::fail(tris::ErrorCode::invalid_argument, "grid step must be positive");
        const auto g = make_grid(grid, tris::deg_to_rad(step_deg));
        auto src = config->cfg.pattern_source(codebook->result.config);
        if (array_factor_only)
            src.element_exponent = 0.0;
        *out = new tris_pattern{tris::radiation_pattern(src, g)};
    });
}

void tris_pattern_free(tris_pattern *pattern) { delete pattern; }

tris_status tris_pattern_size(const tris_pattern *pattern, size_t *size)
{
    return guard([&] {
        require(pattern, size);
        *size = pattern->pattern.grid.size();
    });
}

tris_status tris_pattern_peak(const tris_pattern *pattern, double *theta_deg, double *phi_deg, double *power)
{
    return guard([&] {
        require(pattern, theta_deg, phi_deg, power);
        const auto &p = pattern->pattern;
        const auto i = p.peak_index();
        if (p.grid.kind() == tris::GridKind::cut)
        {
            *theta_deg = tris::rad_to_deg(p.grid.signed_angle(i));
            *phi_deg = tris::rad_to_deg(p.grid.plane_phi());
        }
        else
        {
            *theta_deg = tris::rad_to_deg(p.grid.directions()[i].theta);
            *phi_deg = tris::rad_to_deg(p.grid.directions()[i].phi);
        }
        *power = p.power(i);
    });
}

tris_status tris_pattern_metrics(const tris_pattern *pattern, tris_cut_metrics *out)
{
    return guard([&] {
        require(pattern, out);
        const auto m = tris::pattern_metrics(pattern->pattern);
        *out = tris_cut_metrics{tris::rad_to_deg(m.peak_angle), m.peak_power,         m.sidelobe_level_db,
                                tris::rad_to_deg(m.hpbw),       tris::rad_to_deg(m.null_left),
                                tris::rad_to_deg(m.null_right)};
    });
}

tris_status tris_pattern_directivity(const tris_pattern *pattern, double loss_budget_db, double *directivity_dbi,
                                     double *gain_dbi)
{
    return guard([&] {
        require(pattern, directivity_dbi, gain_dbi);
        const auto g = tris::directivity_and_gain(pattern->pattern, loss_budget_db);
        *directivity_dbi = g.directivity_dbi;
        *gain_dbi = g.gain_dbi;
    });
}

tris_status tris_pattern_write_csv(const tris_pattern *pattern, const char *path)
{
    return guard([&] {
        require(pattern);
        auto f = open_out(path);
        tris::write_pattern_csv(pattern->pattern, f);
        if (!f.flush())
            tris::fail(tris::ErrorCode::io, std::string("write to '") + path + "' failed");
    });
}

tris_status tris_scan_loss(const tris_pattern *broadside, const tris_pattern *steered, double *loss_db)
{
    return guard([&] {
        require(broadside, steered, loss_db);
        *loss_db = tris::scan_loss(broadside->pattern, steered->pattern);
    });
}

tris_status tris_quantization_loss(const tris_config *config, int bits, double *loss_db)
{
    return guard([&] {
        require(config, loss_db);
        const auto &cfg = config->cfg;
        *loss_db = tris::quantization_loss(cfg.geometry, cfg.beam, bits, beam_link(cfg), cfg.link_defaults.offset_samples);
    });
}

tris_status tris_mean_element_loss(const tris_config *config, double *loss_db)
{
    return guard([&] {
        require(config, loss_db);
        *loss_db = config->cfg.element_table.mean_insertion_loss_db();
    });
}

tris_status tris_aperture_efficiency(double gain_dbi, double aperture_area_m2, double carrier_hz, double *efficiency)
{
    return guard([&] {
        require(efficiency);
        *efficiency = tris::aperture_efficiency(gain_dbi, aperture_area_m2, carrier_hz);
    });
}

tris_status tris_noise_power_dbm(double bandwidth_hz, double noise_figure_db, double *noise_dbm)
{
    return guard([&] {
        require(noise_dbm);
        *noise_dbm = tris::noise_power_dbm(bandwidth_hz, noise_figure_db);
    });
}

tris_status tris_quantize_phase(double phase_deg, int bits, int *code)
{
    return guard([&] {
        require(code);
        *code = tris::quantize_phase(tris::deg_to_rad(phase_deg), bits);
    });
}

tris_status tris_oracle_trials(const tris_config *config, unsigned long long seed, int trials,
                               tris_oracle_stats *out)
{
    return guard([&] {
        require(config, out);
        const auto &cfg = config->cfg;
        const tris::ArrayGeometry small(2, 2, cfg.geometry.spacing_x(), cfg.geometry.spacing_y());
        tris::PowerModel model{beam_link(cfg), cfg.mode,
                               cfg.mode == tris::PhaseMode::realized ? &cfg.element_table : nullptr};
        const auto st = tris::oracle_trials(seed, trials, small, cfg.bits, model, cfg.link_defaults.offset_samples);
        *out = tris_oracle_stats{st.trials, st.max_oracle_gap_db, st.mean_oracle_gap_db, st.max_sweep_gap_db};
    });
}

tris_status tris_scenario_count(const tris_config *config, size_t *count)
{
    return guard([&] {
        require(config, count);
        *count = config->cfg.scenarios.size();
    });
}

tris_status tris_scenario_name(const tris_config *config, size_t index, char *buf, size_t cap, size_t *needed)
{
    return guard([&] { copy_string(scenario_at(config, index).name, buf, cap, needed); });
}

tris_status tris_scenario_evaluate(const tris_config *config, size_t index, tris_link_result *out)
{
    return guard([&] {
        require(out);
        const auto &s = scenario_at(config, index);
        const auto &entry = config->cfg.scenarios[index];
        const auto r = tris::evaluate_scenario(s, config->cfg.geometry, config->cfg.bits);
        tris_link_result res{};
        res.transmit_power_dbm = s.transmit_power_dbm;
        res.steer_angle_deg = tris::rad_to_deg(s.tx_steer_angle());
        res.ris_present = s.ris_present ? 1 : 0;
        res.obstacle = !s.obstacle ? 0 : s.obstacle->position == tris::ObstaclePosition::tx_side ? 1 : 2;
        res.received_power_dbm = r.received_power_dbm;
        res.snr_db = r.snr_db;
        res.rate_mbps = r.rate_mbps;
        res.has_expected_rate = entry.expected_rate_mbps ? 1 : 0;
        res.expected_rate_mbps = entry.expected_rate_mbps.value_or(0.0);
        *out = res;
    });
}

tris_status tris_scenario_required_power(const tris_config *config, size_t index, double target_rate_mbps,
                                         double *power_dbm)
{
    return guard([&] {
        require(power_dbm);
        *power_dbm = tris::required_transmit_power(scenario_at(config, index), config->cfg.geometry,
                                                   config->cfg.bits, target_rate_mbps);
    });
}

tris_status tris_scenario_array_gain(const tris_config *config, size_t index, int bits, tris_gain_reference reference,
                                     double *gain_db)
{
    return guard([&] {
        require(gain_db);
        const auto ref = reference == TRIS_REFERENCE_SINGLE_ELEMENT ? tris::ArrayGainReference::single_element
                                                                    : tris::ArrayGainReference::feed_alone;
        *gain_db = tris::array_gain(config->cfg.geometry, scenario_at(config, index), bits, ref);
    });
}

} // extern "C"

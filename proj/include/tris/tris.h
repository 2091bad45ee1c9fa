/* SPDX-License-Identifier: Apache-2.0
 *
 * tris - transmissive RIS link and array simulation library
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the tris shared library.
 *
 * Objects are opaque handles returned by the load, synthesize and compute
 * functions and released with the matching free function. Every fallible
 * call returns a tris_status; on failure tris_last_error() holds a message
 * for the calling thread. Angles are in degrees, lengths in meters, frequencies in hertz.
 * String outputs use (buf, cap, needed): the full length without the
 * terminator is stored in *needed and TRIS_E_CAPACITY is returned when cap is
 * too small. Output pointers may not be NULL unless stated otherwise.
 */

#ifndef TRIS_TRIS_H
#define TRIS_TRIS_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(TRIS_BUILDING)
#define TRIS_API __declspec(dllexport)
#else
#define TRIS_API __declspec(dllimport)
#endif
#else
#define TRIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tris_status
{
    TRIS_OK = 0,
    TRIS_E_INVALID_ARGUMENT = 1,
    TRIS_E_DEGENERATE_GEOMETRY = 2,
    TRIS_E_CAPACITY = 3,
    TRIS_E_UNSUPPORTED = 4,
    TRIS_E_RESOLUTION = 5,
    TRIS_E_METRIC_UNDEFINED = 6,
    TRIS_E_INFEASIBLE_TARGET = 7,
    TRIS_E_PARSE = 8,
    TRIS_E_IO = 9,
    TRIS_E_INTERNAL = 99
} tris_status;

typedef enum tris_grid
{
    TRIS_GRID_CUT_E = 0,     /* phi = 0 plane, signed angle in [-90, 90] */
    TRIS_GRID_CUT_H = 1,     /* phi = 90 plane */
    TRIS_GRID_HEMISPHERE = 2 /* theta in [0, 90], phi in [0, 360) */
} tris_grid;

typedef enum tris_gain_reference
{
    TRIS_REFERENCE_FEED_ALONE = 0,
    TRIS_REFERENCE_SINGLE_ELEMENT = 1
} tris_gain_reference;

typedef struct tris_config tris_config;
typedef struct tris_codebook tris_codebook;
typedef struct tris_pattern tris_pattern;

typedef struct tris_cut_metrics
{
    double peak_angle_deg; /* signed */
    double peak_power;     /* linear, unnormalized */
    double sidelobe_level_db;
    double hpbw_deg;
    double null_left_deg, null_right_deg;
} tris_cut_metrics;

typedef struct tris_oracle_stats
{
    int trials;
    double max_oracle_gap_db;
    double mean_oracle_gap_db;
    double max_sweep_gap_db;
} tris_oracle_stats;

typedef struct tris_link_result
{
    double transmit_power_dbm;
    double steer_angle_deg;
    int ris_present;
    int obstacle; /* 0 none, 1 transmitter side, 2 receiver side */
    double received_power_dbm;
    double snr_db;
    double rate_mbps;
    int has_expected_rate;
    double expected_rate_mbps;
} tris_link_result;

TRIS_API const char *tris_version(void);
TRIS_API const char *tris_last_error(void);
TRIS_API const char *tris_status_name(tris_status status);

/* Configuration */
TRIS_API tris_status tris_config_default(tris_config **out);
TRIS_API tris_status tris_config_load(const char *path, int lenient, tris_config **out);
TRIS_API tris_status tris_config_parse(const char *text, const char *base_dir, int lenient, tris_config **out);
TRIS_API void tris_config_free(tris_config *config);
TRIS_API tris_status tris_config_describe(const tris_config *config, char *buf, size_t cap, size_t *needed);
TRIS_API tris_status tris_config_warning_count(const tris_config *config, size_t *count);
TRIS_API tris_status tris_config_warning(const tris_config *config, size_t index, char *buf, size_t cap,
                                         size_t *needed);
TRIS_API tris_status tris_config_panel(const tris_config *config, size_t *num_x, size_t *num_y, double *spacing_x_m,
                                       double *spacing_y_m, double *carrier_hz);
TRIS_API tris_status tris_config_bits(const tris_config *config, int *bits);
TRIS_API tris_status tris_config_set_bits(tris_config *config, int bits);
/* realized = 0 selects nominal phases, 1 the element table */
TRIS_API tris_status tris_config_set_mode(tris_config *config, int realized);
TRIS_API tris_status tris_config_beam_target(const tris_config *config, double *range_m, double *polar_deg,
                                             double *azimuth_deg);
/* Moves the far endpoint of the beam spec; the beam then points along it */
TRIS_API tris_status tris_config_set_beam_target(tris_config *config, double range_m, double polar_deg,
                                                 double azimuth_deg);

/* Codebooks, synthesized for the beam spec with the C-offset sweep */
TRIS_API tris_status tris_codebook_synthesize(const tris_config *config, tris_codebook **out);
TRIS_API void tris_codebook_free(tris_codebook *codebook);
TRIS_API tris_status tris_codebook_dims(const tris_codebook *codebook, size_t *num_x, size_t *num_y, int *bits);
/* Row-major codes, m outer; cap counts ints */
TRIS_API tris_status tris_codebook_codes(const tris_codebook *codebook, int *codes, size_t cap);
TRIS_API tris_status tris_codebook_phase_offset(const tris_codebook *codebook, double *offset_deg);
TRIS_API tris_status tris_codebook_write_csv(const tris_codebook *codebook, const char *path);
/* Packed bias bitstream (2-bit panels); cap counts bytes */
TRIS_API tris_status tris_codebook_bias(const tris_codebook *codebook, unsigned char *bytes, size_t cap,
                                        size_t *num_bits);
TRIS_API tris_status tris_codebook_write_bias(const tris_codebook *codebook, const char *path);

/* Radiation patterns of a codebook under the config's feed. With
 * array_factor_only the element factor is dropped. */
TRIS_API tris_status tris_pattern_compute(const tris_config *config, const tris_codebook *codebook, tris_grid grid,
                                          double step_deg, int array_factor_only, tris_pattern **out);
TRIS_API void tris_pattern_free(tris_pattern *pattern);
TRIS_API tris_status tris_pattern_size(const tris_pattern *pattern, size_t *size);
/* Peak direction; for cuts theta_deg is the signed cut angle and phi_deg the plane */
TRIS_API tris_status tris_pattern_peak(const tris_pattern *pattern, double *theta_deg, double *phi_deg,
                                       double *power);
TRIS_API tris_status tris_pattern_metrics(const tris_pattern *pattern, tris_cut_metrics *out);
TRIS_API tris_status tris_pattern_directivity(const tris_pattern *pattern, double loss_budget_db,
                                              double *directivity_dbi, double *gain_dbi);
TRIS_API tris_status tris_pattern_write_csv(const tris_pattern *pattern, const char *path);
TRIS_API tris_status tris_scan_loss(const tris_pattern *broadside, const tris_pattern *steered, double *loss_db);

/* Scalar studies */
TRIS_API tris_status tris_quantization_loss(const tris_config *config, int bits, double *loss_db);
TRIS_API tris_status tris_mean_element_loss(const tris_config *config, double *loss_db);
TRIS_API tris_status tris_aperture_efficiency(double gain_dbi, double aperture_area_m2, double carrier_hz,
                                              double *efficiency);
TRIS_API tris_status tris_noise_power_dbm(double bandwidth_hz, double noise_figure_db, double *noise_dbm);
TRIS_API tris_status tris_quantize_phase(double phase_deg, int bits, int *code);
/* Swept synthesis against brute force on a 2x2 panel with the config's
 * spacing, resolution and phase mode, over random endpoint pairs */
TRIS_API tris_status tris_oracle_trials(const tris_config *config, unsigned long long seed, int trials,
                                        tris_oracle_stats *out);

/* Link scenarios of a config, in file order */
TRIS_API tris_status tris_scenario_count(const tris_config *config, size_t *count);
TRIS_API tris_status tris_scenario_name(const tris_config *config, size_t index, char *buf, size_t cap,
                                        size_t *needed);
TRIS_API tris_status tris_scenario_evaluate(const tris_config *config, size_t index, tris_link_result *out);
TRIS_API tris_status tris_scenario_required_power(const tris_config *config, size_t index, double target_rate_mbps,
                                                  double *power_dbm);
/* bits = 0 means continuous lossless phases */
TRIS_API tris_status tris_scenario_array_gain(const tris_config *config, size_t index, int bits,
                                              tris_gain_reference reference, double *gain_db);

#ifdef __cplusplus
}
#endif

#endif

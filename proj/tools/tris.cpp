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

// Batch front end. Talks to the library through the C interface only.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include "tris/tris.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace
{
    struct DomainError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct UsageError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    void check(tris_status s)
    {
        if (s != TRIS_OK)
            throw DomainError(std::string(tris_status_name(s)) + ": " + tris_last_error());
    }

    struct ConfigDeleter
    {
        void operator()(tris_config *p) const { tris_config_free(p); }
    };
    struct CodebookDeleter
    {
        void operator()(tris_codebook *p) const { tris_codebook_free(p); }
    };
    struct PatternDeleter
    {
        void operator()(tris_pattern *p) const { tris_pattern_free(p); }
    };
    using Config = std::unique_ptr<tris_config, ConfigDeleter>;
    using Codebook = std::unique_ptr<tris_codebook, CodebookDeleter>;
    using Pattern = std::unique_ptr<tris_pattern, PatternDeleter>;

    struct Options
    {
        std::string config;
        std::string out;
        double grid_deg = 0.25;
        double hemi_deg = 1.0;
        std::string bits;
        std::string mode;
        unsigned long long seed = 1;
        bool lenient = false;
        std::string angles = "-10,-20,-30,-40,-50,-60";
        int trials = 100;
    };

    std::string num(double v, int prec = 4)
    {
        if (std::isinf(v))
            return v < 0 ? "-inf" : "inf";
        if (std::isnan(v))
            return "nan";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", prec, v);
        // Avoid printing "-0.0000"
        std::string s = buf;
        if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-')
            s.erase(0, 1);
        return s;
    }

    std::string get_string(tris_status (*fn)(const tris_config *, char *, size_t, size_t *), const tris_config *c)
    {
        size_t needed = 0;
        fn(c, nullptr, 0, &needed);
        std::string s(needed + 1, '\0');
        check(fn(c, s.data(), s.size(), &needed));
        s.resize(needed);
        return s;
    }

    std::string scenario_name(const tris_config *c, size_t i)
    {
        size_t needed = 0;
        tris_scenario_name(c, i, nullptr, 0, &needed);
        std::string s(needed + 1, '\0');
        check(tris_scenario_name(c, i, s.data(), s.size(), &needed));
        s.resize(needed);
        return s;
    }

    std::pair<int, int> parse_bits(const std::string &text, int fallback)
    {
        if (text.empty())
            return {fallback, fallback};
        auto to_int = [&](const std::string &t)
        {
            std::size_t used = 0;
            int v = 0;
            try
            {
                v = std::stoi(t, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != t.size())
                throw UsageError("--bits expects n or a..b, got '" + text + "'");
            return v;
        };
        const auto dots = text.find("..");
        if (dots == std::string::npos)
        {
            const int b = to_int(text);
            return {b, b};
        }
        const int a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
        if (a > b)
            throw UsageError("--bits range must be increasing");
        return {a, b};
    }

    std::vector<double> parse_angles(const std::string &text)
    {
        std::vector<double> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            try
            {
                std::size_t used = 0;
                out.push_back(std::stod(item, &used));
                if (used != item.size())
                    throw std::invalid_argument(item);
            }
            catch (const std::exception &)
            {
                throw UsageError("--angles expects a comma-separated list of degrees, got '" + text + "'");
            }
        }
        if (out.empty())
            throw UsageError("--angles is empty");
        return out;
    }

    class Run
    {
    public:
        Run(Options opt, std::string command) : opt_(std::move(opt)), command_(std::move(command)) {}

        int execute()
        {
            out_dir_ = resolve_out_dir();
            std::error_code ec;
            fs::create_directories(out_dir_, ec);
            if (ec || !fs::is_directory(out_dir_))
                throw DomainError("cannot create output directory '" + out_dir_.string() + "'");

            if (command_ == "codebook")
                codebook();
            else if (command_ == "pattern")
                pattern();
            else if (command_ == "scan")
                scan();
            else if (command_ == "quantloss")
                quantloss();
            else if (command_ == "link")
                link();
            else
                reproduce();
            write_report();
            return status_;
        }

    private:
        Options opt_;
        std::string command_;
        fs::path out_dir_;
        std::ostringstream summary_;
        std::vector<std::string> outputs_;
        std::string resolved_;
        int status_ = 0;

        fs::path resolve_out_dir() const
        {
            if (!opt_.out.empty())
                return opt_.out;
            if (const char *env = std::getenv("TRIS_OUT_DIR"); env && *env)
                return env;
            return ".";
        }

        Config load(const std::string &path) const
        {
            tris_config *raw = nullptr;
            if (path.empty())
                check(tris_config_default(&raw));
            else
                check(tris_config_load(path.c_str(), opt_.lenient ? 1 : 0, &raw));
            Config cfg(raw);
            size_t n = 0;
            check(tris_config_warning_count(cfg.get(), &n));
            for (size_t i = 0; i < n; ++i)
            {
                size_t needed = 0;
                tris_config_warning(cfg.get(), i, nullptr, 0, &needed);
                std::string w(needed + 1, '\0');
                check(tris_config_warning(cfg.get(), i, w.data(), w.size(), &needed));
                w.resize(needed);
                std::cerr << "warning: " << w << "\n";
            }
            if (opt_.mode == "realized")
                check(tris_config_set_mode(cfg.get(), 1));
            else if (opt_.mode == "nominal")
                check(tris_config_set_mode(cfg.get(), 0));
            return cfg;
        }

        // Config for single-resolution commands, with --bits applied
        Config load_single() const
        {
            auto cfg = load(opt_.config);
            int bits = 0;
            check(tris_config_bits(cfg.get(), &bits));
            const auto [lo, hi] = parse_bits(opt_.bits, bits);
            if (lo != hi)
                throw UsageError("'" + command_ + "' takes a single --bits value");
            check(tris_config_set_bits(cfg.get(), lo));
            return cfg;
        }

        void remember(const Config &cfg)
        {
            resolved_ = get_string(&tris_config_describe, cfg.get());
        }

        std::ofstream open(const std::string &name)
        {
            const auto path = out_dir_ / name;
            std::ofstream f(path, std::ios::out | std::ios::trunc);
            if (!f)
                throw DomainError("cannot write '" + path.string() + "'");
            outputs_.push_back(name);
            return f;
        }

        // Path of an output produced by the library, recorded for the report
        std::string note(const std::string &name)
        {
            outputs_.push_back(name);
            return (out_dir_ / name).string();
        }

        void write_report()
        {
            auto f = open("report.txt");
            f << "# tris " << tris_version() << " " << command_ << "\n";
            f << "# config: " << (opt_.config.empty() ? std::string("built-in defaults") : opt_.config) << "\n";
            std::istringstream in(resolved_);
            for (std::string line; std::getline(in, line);)
                f << "# " << line << "\n";
            f << summary_.str();
            std::cout << summary_.str();
            std::cout << "outputs in " << out_dir_.string() << ":";
            for (const auto &o : outputs_)
                std::cout << " " << o;
            std::cout << "\n";
        }

        Codebook synthesize(const Config &cfg) const
        {
            tris_codebook *raw = nullptr;
            check(tris_codebook_synthesize(cfg.get(), &raw));
            return Codebook(raw);
        }

        Pattern compute(const Config &cfg, const Codebook &cb, tris_grid grid, double step, bool af = false) const
        {
            tris_pattern *raw = nullptr;
            check(tris_pattern_compute(cfg.get(), cb.get(), grid, step, af ? 1 : 0, &raw));
            return Pattern(raw);
        }

        static double peak_angle(const Pattern &p)
        {
            double theta = 0, phi = 0, power = 0;
            check(tris_pattern_peak(p.get(), &theta, &phi, &power));
            return theta;
        }

        void codebook()
        {
            auto cfg = load_single();
            remember(cfg);
            auto cb = synthesize(cfg);
            size_t nx = 0, ny = 0;
            int bits = 0;
            check(tris_codebook_dims(cb.get(), &nx, &ny, &bits));
            double offset = 0;
            check(tris_codebook_phase_offset(cb.get(), &offset));
            std::vector<int> codes(nx * ny);
            check(tris_codebook_codes(cb.get(), codes.data(), codes.size()));

            check(tris_codebook_write_csv(cb.get(), note("codebook.csv").c_str()));

            std::vector<int> histogram(std::size_t(1) << bits, 0);
            for (int c : codes)
                ++histogram[std::size_t(c)];
            summary_ << "panel " << nx << "x" << ny << ", " << bits << "-bit codes, phase offset " << num(offset, 3)
                     << " deg\n";
            summary_ << "code counts:";
            for (std::size_t c = 0; c < histogram.size(); ++c)
                summary_ << " " << c << "=" << histogram[c];
            summary_ << "\n";

            if (bits == 2)
            {
                size_t num_bits = 0;
                std::vector<unsigned char> bytes((2 * nx * ny + 7) / 8);
                check(tris_codebook_bias(cb.get(), bytes.data(), bytes.size(), &num_bits));
                check(tris_codebook_write_bias(cb.get(), note("bias.bin").c_str()));
                std::size_t ones = 0;
                for (unsigned char b : bytes)
                    for (int k = 0; k < 8; ++k)
                        ones += (b >> k) & 1u;
                summary_ << "bias bitstream: " << num_bits << " bits (" << ones << " set), " << bytes.size()
                         << " bytes\n";
            }
            else
                summary_ << "bias bitstream: not written (defined for 2-bit panels only)\n";
        }

        void write_metrics_row(std::ostream &f, const char *plane, const Pattern &p)
        {
            tris_cut_metrics m{};
            const tris_status s = tris_pattern_metrics(p.get(), &m);
            if (s == TRIS_OK)
            {
                f << plane << "," << num(m.peak_angle_deg, 2) << "," << num(m.sidelobe_level_db, 2) << ","
                  << num(m.hpbw_deg, 2) << "," << num(m.null_left_deg, 2) << "," << num(m.null_right_deg, 2) << "\n";
                summary_ << plane << "-plane: peak " << num(m.peak_angle_deg, 2) << " deg, SLL "
                         << num(m.sidelobe_level_db, 2) << " dB, HPBW " << num(m.hpbw_deg, 2) << " deg\n";
            }
            else if (s == TRIS_E_METRIC_UNDEFINED)
            {
                f << plane << "," << num(peak_angle(p), 2) << ",nan,nan,nan,nan\n";
                summary_ << plane << "-plane: peak " << num(peak_angle(p), 2) << " deg, lobe metrics undefined ("
                         << tris_last_error() << ")\n";
            }
            else
                check(s);
        }

        void pattern()
        {
            auto cfg = load_single();
            remember(cfg);
            auto cb = synthesize(cfg);
            auto e = compute(cfg, cb, TRIS_GRID_CUT_E, opt_.grid_deg);
            auto h = compute(cfg, cb, TRIS_GRID_CUT_H, opt_.grid_deg);
            auto hemi = compute(cfg, cb, TRIS_GRID_HEMISPHERE, opt_.hemi_deg);
            for (auto [name, p] : {std::pair{"pattern_e.csv", &e}, std::pair{"pattern_h.csv", &h},
                                   std::pair{"pattern_hemisphere.csv", &hemi}})
            {
                check(tris_pattern_write_csv(p->get(), note(name).c_str()));
            }

            auto f = open("pattern_metrics.csv");
            f << "plane,peak_deg,sidelobe_level_db,hpbw_deg,null_left_deg,null_right_deg\n";
            write_metrics_row(f, "E", e);
            write_metrics_row(f, "H", h);

            int bits = 0;
            check(tris_config_bits(cfg.get(), &bits));
            double element_loss = 0, ql = 0;
            check(tris_mean_element_loss(cfg.get(), &element_loss));
            check(tris_quantization_loss(cfg.get(), bits, &ql));
            double d = 0, g = 0;
            check(tris_pattern_directivity(hemi.get(), element_loss + ql, &d, &g));
            size_t nx = 0, ny = 0;
            double dx = 0, dy = 0, fc = 0;
            check(tris_config_panel(cfg.get(), &nx, &ny, &dx, &dy, &fc));
            double eff = 0;
            check(tris_aperture_efficiency(g, double(nx) * dx * double(ny) * dy, fc, &eff));

            auto gf = open("pattern_gain.csv");
            gf << "directivity_dbi,element_loss_db,quantization_loss_db,gain_dbi,aperture_efficiency_pct\n"
               << num(d, 3) << "," << num(element_loss, 3) << "," << num(ql, 3) << "," << num(g, 3) << ","
               << num(100.0 * eff, 2) << "\n";
            summary_ << "directivity " << num(d, 2) << " dBi, loss budget " << num(element_loss + ql, 2)
                     << " dB, gain " << num(g, 2) << " dBi, aperture efficiency " << num(100.0 * eff, 1) << " %\n";
        }

        struct ScanRow
        {
            double steer, peak, af_peak, loss;
        };

        // Steering to signed angle a in a plane points the beam target at
        // polar |a| with the azimuth flipped for negative angles
        std::vector<ScanRow> scan_plane(const Config &cfg, tris_grid grid, const std::vector<double> &angles)
        {
            double range = 0, polar0 = 0, azimuth0 = 0;
            check(tris_config_beam_target(cfg.get(), &range, &polar0, &azimuth0));
            const double plane = grid == TRIS_GRID_CUT_E ? 0.0 : 90.0;
            check(tris_config_set_beam_target(cfg.get(), range, 0.0, 0.0));
            auto cb0 = synthesize(cfg);
            auto broadside = compute(cfg, cb0, grid, opt_.grid_deg);
            std::vector<ScanRow> rows;
            for (double a : angles)
            {
                check(tris_config_set_beam_target(cfg.get(), range, std::fabs(a), a < 0 ? plane + 180.0 : plane));
                auto cb = synthesize(cfg);
                auto full = compute(cfg, cb, grid, opt_.grid_deg);
                auto af = compute(cfg, cb, grid, opt_.grid_deg, true);
                double loss = 0;
                check(tris_scan_loss(broadside.get(), full.get(), &loss));
                rows.push_back({a, peak_angle(full), peak_angle(af), loss});
            }
            check(tris_config_set_beam_target(cfg.get(), range, polar0, azimuth0));
            return rows;
        }

        void scan()
        {
            auto cfg = load_single();
            remember(cfg);
            const auto angles = parse_angles(opt_.angles);
            auto f = open("scan.csv");
            f << "plane,steer_deg,peak_deg,array_factor_peak_deg,pointing_error_deg,scan_loss_db\n";
            summary_ << "plane  steer_deg  peak_deg  af_peak_deg  error_deg  scan_loss_db\n";
            for (auto [grid, name] : {std::pair{TRIS_GRID_CUT_E, "E"}, std::pair{TRIS_GRID_CUT_H, "H"}})
            {
                for (const auto &r : scan_plane(cfg, grid, angles))
                {
                    const double err = std::fabs(r.af_peak - r.steer);
                    f << name << "," << num(r.steer, 2) << "," << num(r.peak, 2) << "," << num(r.af_peak, 2) << ","
                      << num(err, 2) << "," << num(r.loss, 3) << "\n";
                    char line[128];
                    std::snprintf(line, sizeof line, "%-5s  %9.2f  %8.2f  %11.2f  %9.2f  %12.3f\n", name, r.steer,
                                  r.peak, r.af_peak, err, r.loss);
                    summary_ << line;
                }
            }
        }

        void quantloss()
        {
            auto cfg = load(opt_.config);
            remember(cfg);
            const auto [lo, hi] = parse_bits(opt_.bits.empty() ? "1..4" : opt_.bits, 0);
            auto f = open("quantloss.csv");
            f << "bits,loss_db,sinc2_oracle_db\n";
            summary_ << "bits  loss_db  sinc2_oracle_db\n";
            for (int b = lo; b <= hi; ++b)
            {
                double loss = 0;
                check(tris_quantization_loss(cfg.get(), b, &loss));
                const double x = std::numbers::pi / std::pow(2.0, b);
                const double oracle = -20.0 * std::log10(std::sin(x) / x);
                f << b << "," << num(loss, 4) << "," << num(oracle, 4) << "\n";
                char line[96];
                std::snprintf(line, sizeof line, "%4d  %7.4f  %15.4f\n", b, loss, oracle);
                summary_ << line;
            }
        }

        // Returns the number of scenarios whose rate differs from the expected one
        int run_scenarios(const Config &cfg, std::ostream &f)
        {
            size_t n = 0;
            check(tris_scenario_count(cfg.get(), &n));
            if (n == 0)
                throw DomainError("config defines no link scenarios");
            f << "scenario,ris_present,obstacle,steer_deg,transmit_power_dbm,received_power_dbm,snr_db,rate_mbps,"
                 "expected_rate_mbps,match\n";
            summary_ << "scenario                 ris  obstacle  steer_deg  tx_dbm   rx_dbm  snr_db  rate_mbps  "
                        "expected\n";
            int mismatches = 0;
            for (size_t i = 0; i < n; ++i)
            {
                tris_link_result r{};
                check(tris_scenario_evaluate(cfg.get(), i, &r));
                const auto name = scenario_name(cfg.get(), i);
                const char *obstacle = r.obstacle == 0 ? "none" : r.obstacle == 1 ? "tx_side" : "rx_side";
                const bool match = !r.has_expected_rate || r.rate_mbps == r.expected_rate_mbps;
                mismatches += match ? 0 : 1;
                f << name << "," << r.ris_present << "," << obstacle << "," << num(r.steer_angle_deg, 2) << ","
                  << num(r.transmit_power_dbm, 2) << "," << num(r.received_power_dbm, 3) << "," << num(r.snr_db, 3)
                  << "," << num(r.rate_mbps, 0) << ","
                  << (r.has_expected_rate ? num(r.expected_rate_mbps, 0) : std::string()) << ","
                  << (r.has_expected_rate ? (match ? "yes" : "no") : "") << "\n";
                char line[160];
                std::snprintf(line, sizeof line, "%-24s %3s  %-8s  %9.1f  %6.1f  %7.2f  %6.2f  %9.0f  %s\n",
                              name.c_str(), r.ris_present ? "yes" : "no", obstacle, r.steer_angle_deg,
                              r.transmit_power_dbm, r.received_power_dbm, r.snr_db, r.rate_mbps,
                              r.has_expected_rate ? (match ? num(r.expected_rate_mbps, 0) + " ok"
                                                           : num(r.expected_rate_mbps, 0) + " MISMATCH")
                                                        .c_str()
                                                  : "-");
                summary_ << line;
            }
            return mismatches;
        }

        void link()
        {
            auto cfg = load_single();
            remember(cfg);
            auto f = open("link.csv");
            const int mismatches = run_scenarios(cfg, f);
            if (mismatches)
                summary_ << mismatches << " scenario(s) differ from their expected rate\n";
        }

        std::string bundle_path() const
        {
            if (!opt_.config.empty())
                return opt_.config;
            return std::string(TRIS_DATA_DIR) + "/tables_4_5_6.scenario";
        }

        struct Check
        {
            std::string criterion, quantity, unit;
            double value, lower, upper;
        };

        void reproduce()
        {
            std::vector<Check> checks;

            // Aperture efficiency of the quoted peak gain over the physical aperture
            double eff = 0;
            check(tris_aperture_efficiency(22.0, 0.0784 * 0.0784, 27.0e9, &eff));
            checks.push_back({"AC1", "aperture_efficiency", "pct", 100.0 * eff, 25.2, 25.4});

            // Panel-level studies on the built-in defaults
            auto base = load("");
            double q1 = 0, q2 = 0;
            check(tris_quantization_loss(base.get(), 1, &q1));
            check(tris_quantization_loss(base.get(), 2, &q2));
            checks.push_back({"AC2", "quantization_loss_b2", "dB", q2, 0.612, 1.0});
            checks.push_back({"AC2", "quantization_loss_b1", "dB", q1, 3.0, 4.5});

            auto cb = synthesize(base);
            for (auto [grid, plane] : {std::pair{TRIS_GRID_CUT_E, "E"}, std::pair{TRIS_GRID_CUT_H, "H"}})
            {
                auto cut = compute(base, cb, grid, opt_.grid_deg);
                tris_cut_metrics m{};
                check(tris_pattern_metrics(cut.get(), &m));
                checks.push_back({"AC3", std::string("sidelobe_level_") + plane, "dB", m.sidelobe_level_db, -1e9, -18.0});
                checks.push_back({"AC3", std::string("hpbw_") + plane, "deg", m.hpbw_deg, 6.0, 10.0});
            }
            const std::vector<double> steers{-10, -20, -30, -40, -50, -60};
            for (auto [grid, plane] : {std::pair{TRIS_GRID_CUT_E, "E"}, std::pair{TRIS_GRID_CUT_H, "H"}})
            {
                const auto rows = scan_plane(base, grid, steers);
                double worst = 0;
                for (const auto &r : rows)
                    worst = std::max(worst, std::fabs(r.af_peak - r.steer));
                checks.push_back({"AC3", std::string("max_pointing_error_") + plane, "deg", worst, 0.0, 1.0});
                checks.push_back({"AC3", std::string("scan_loss_60_") + plane, "dB", rows.back().loss, 2.5, 6.0});
            }

            auto hemi = compute(base, cb, TRIS_GRID_HEMISPHERE, opt_.hemi_deg);
            double element_loss = 0, d = 0, g = 0;
            check(tris_mean_element_loss(base.get(), &element_loss));
            check(tris_pattern_directivity(hemi.get(), element_loss + q2, &d, &g));
            checks.push_back({"AC4", "broadside_gain", "dBi", g, 20.0, 24.0});

            // Link operating points from the calibration bundle
            auto bundle = load(bundle_path());
            remember(bundle);
            auto f = open("reproduce_scenarios.csv");
            const int mismatches = run_scenarios(bundle, f);
            size_t n = 0;
            check(tris_scenario_count(bundle.get(), &n));

            std::optional<size_t> direct, panel;
            for (size_t i = 0; i < n; ++i)
            {
                tris_link_result r{};
                check(tris_scenario_evaluate(bundle.get(), i, &r));
                if (r.obstacle || r.steer_angle_deg != 0.0)
                    continue;
                if (!r.ris_present && !direct)
                    direct = i;
                if (r.ris_present && !panel)
                    panel = i;
            }
            if (!direct || !panel)
                throw DomainError("bundle lacks unobstructed broadside scenarios with and without the panel");
            double p_direct = 0, p_panel = 0;
            check(tris_scenario_required_power(bundle.get(), *direct, 1024.0, &p_direct));
            check(tris_scenario_required_power(bundle.get(), *panel, 1121.0, &p_panel));
            checks.push_back({"AC5", "power_reduction_1024_vs_1121", "dB", p_direct - p_panel, 7.0, 10.5});
            checks.push_back({"AC6", "scenario_rate_mismatches", "count", double(mismatches), 0.0, 0.0});

            // Oracle equivalence on small panels
            tris_oracle_stats st{};
            check(tris_oracle_trials(base.get(), opt_.seed, opt_.trials, &st));
            checks.push_back({"AC7", "max_oracle_gap", "dB", st.max_oracle_gap_db, 0.0, 0.5});
            checks.push_back({"AC7", "max_sweep_gap", "dB", st.max_sweep_gap_db, 0.0, 0.05});

            // Quantizer error bound on random phases
            std::mt19937_64 rng(opt_.seed);
            std::uniform_real_distribution<double> phase(-720.0, 720.0);
            double worst_ratio = 0;
            for (int i = 0; i < 100000; ++i)
            {
                const int b = 1 + int(i % 4);
                const double p = phase(rng);
                int code = 0;
                check(tris_quantize_phase(p, b, &code));
                const double step = 360.0 / std::pow(2.0, b);
                double err = std::fmod(std::fabs(p - code * step), 360.0);
                err = std::min(err, 360.0 - err);
                worst_ratio = std::max(worst_ratio, err / (step / 2.0));
            }
            checks.push_back({"AC8", "quantizer_error_over_bound", "ratio", worst_ratio, 0.0, 1.0});

            auto s = open("reproduce_summary.csv");
            s << "criterion,quantity,unit,value_in_unit,lower_in_unit,upper_in_unit,pass\n";
            summary_ << "\ncriterion  quantity                          value        window               result\n";
            int failed = 0;
            for (const auto &c : checks)
            {
                const bool pass = c.value >= c.lower - 1e-12 && c.value <= c.upper + 1e-12;
                failed += pass ? 0 : 1;
                const std::string lower = c.lower <= -1e8 ? "" : num(c.lower, 3);
                s << c.criterion << "," << c.quantity << "," << c.unit << "," << num(c.value, 4) << "," << lower << ","
                  << num(c.upper, 3) << "," << (pass ? "yes" : "no") << "\n";
                char line[200];
                std::snprintf(line, sizeof line, "%-9s  %-32s  %8.3f %-5s  [%8s, %8s]  %s\n", c.criterion.c_str(),
                              c.quantity.c_str(), c.value, c.unit.c_str(), lower.empty() ? "-inf" : lower.c_str(),
                              num(c.upper, 3).c_str(), pass ? "PASS" : "FAIL");
                summary_ << line;
            }
            summary_ << (failed ? std::to_string(failed) + " check(s) failed\n" : "all checks passed\n");
            status_ = failed ? 1 : 0;
        }
    };
}

int main(int argc, char **argv)
{
    CLI::App app{"tris: transmissive RIS array and link simulator"};
    app.set_version_flag("--version", std::string(tris_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config, "Run configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", opt.out, "Output directory (default: $TRIS_OUT_DIR or .)");
    app.add_option("--grid-deg", opt.grid_deg, "Principal-cut resolution in degrees")->check(CLI::PositiveNumber);
    app.add_option("--bits", opt.bits, "Phase resolution n, or a range a..b for quantloss");
    app.add_option("--mode", opt.mode, "Element response: nominal or realized")
        ->check(CLI::IsMember({"nominal", "realized"}));
    app.add_option("--seed", opt.seed, "Seed for randomized trials");
    app.add_flag("--lenient", opt.lenient, "Report unknown config keys as warnings");

    struct Sub
    {
        const char *name, *help;
    };
    const Sub subs[] = {{"codebook", "Synthesize the code grid and bias bitstream for the beam spec"},
                        {"pattern", "Radiation pattern cuts, hemisphere, lobe metrics and gain"},
                        {"scan", "Steer across angles and report pointing and scan loss"},
                        {"quantloss", "Quantization loss against phase resolution"},
                        {"link", "Evaluate the link scenarios of a config"},
                        {"reproduce", "Run the calibration bundle and the panel metric suite"}};
    for (const auto &s : subs)
    {
        auto *cmd = app.add_subcommand(s.name, s.help);
        if (std::string(s.name) == "pattern" || std::string(s.name) == "reproduce")
            cmd->add_option("--hemi-deg", opt.hemi_deg, "Hemisphere grid step in degrees")
                ->check(CLI::PositiveNumber);
        if (std::string(s.name) == "scan")
            cmd->add_option("--angles", opt.angles, "Comma-separated signed steer angles in degrees");
        if (std::string(s.name) == "reproduce")
            cmd->add_option("--trials", opt.trials, "Random oracle trials")->check(CLI::PositiveNumber);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try
    {
        Run run(opt, command);
        return run.execute();
    }
    catch (const UsageError &e)
    {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }
    catch (const DomainError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

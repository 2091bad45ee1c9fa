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

#include "tris/config.hpp"
#include "tris/common.hpp"

#include "text_util.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tris
{
    namespace
    {
        struct Entry
        {
            std::string value;
            int line;
        };

        struct Section
        {
            std::string kind;  // panel, beam, feed, link, scenario
            std::string title; // scenario name
            int line = 0;
            std::vector<std::pair<std::string, Entry>> entries; // file order
        };

        std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

        std::vector<Section> split_sections(const std::string &text)
        {
            std::vector<Section> out;
            std::istringstream in(text);
            std::string raw;
            int lineno = 0;
            while (std::getline(in, raw))
            {
                ++lineno;
                const auto line = detail::trim(detail::strip_comment(raw));
                if (line.empty())
                    continue;
                if (line.front() == '[')
                {
                    if (line.back() != ']')
                        fail(ErrorCode::parse, at_line(lineno) + "unterminated section header");
                    const auto inner = detail::trim(line.substr(1, line.size() - 2));
                    Section s;
                    s.line = lineno;
                    const auto sp = inner.find_first_of(" \t");
                    s.kind = sp == std::string::npos ? inner : inner.substr(0, sp);
                    s.title = sp == std::string::npos ? std::string() : detail::trim(inner.substr(sp));
                    if (s.kind == "scenario" && s.title.empty())
                        fail(ErrorCode::parse, at_line(lineno) + "scenario section needs a name");
                    if (s.kind != "scenario" && !s.title.empty())
                        fail(ErrorCode::parse, at_line(lineno) + "section [" + s.kind + "] takes no name");
                    out.push_back(std::move(s));
                    continue;
                }
                const auto eq = line.find('=');
                if (eq == std::string::npos)
                    fail(ErrorCode::parse, at_line(lineno) + "expected 'key = value'");
                if (out.empty())
                    fail(ErrorCode::parse, at_line(lineno) + "key outside of any section");
                const auto key = detail::trim(line.substr(0, eq));
                const auto value = detail::trim(line.substr(eq + 1));
                if (key.empty())
                    fail(ErrorCode::parse, at_line(lineno) + "empty key");
                for (const auto &[k, e] : out.back().entries)
                    if (k == key)
                        fail(ErrorCode::parse, at_line(lineno) + "duplicate key '" + key + "' (first set on line " +
                                                   std::to_string(e.line) + ")");
                out.back().entries.push_back({key, {value, lineno}});
            }
            return out;
        }

        double number(const Entry &e, const std::string &key)
        {
            return detail::parse_double(e.value, at_line(e.line) + key);
        }

        int integer(const Entry &e, const std::string &key)
        {
            const auto v = detail::parse_int(e.value, at_line(e.line) + key);
            if (v < 0 || v > 1 << 20)
                fail(ErrorCode::parse, at_line(e.line) + key + ": value out of range");
            return int(v);
        }

        bool flag(const Entry &e, const std::string &key)
        {
            if (e.value == "true" || e.value == "yes" || e.value == "1")
                return true;
            if (e.value == "false" || e.value == "no" || e.value == "0")
                return false;
            fail(ErrorCode::parse, at_line(e.line) + key + ": expected true or false, got '" + e.value + "'");
        }

        PhaseMode phase_mode(const std::string &v, int line)
        {
            if (v == "nominal")
                return PhaseMode::nominal;
            if (v == "realized")
                return PhaseMode::realized;
            fail(ErrorCode::parse, at_line(line) + "mode: expected nominal or realized, got '" + v + "'");
        }

        DistanceModel distance_model(const std::string &v, int line)
        {
            if (v == "auto")
                return DistanceModel::automatic;
            if (v == "spherical")
                return DistanceModel::spherical;
            if (v == "planar")
                return DistanceModel::planar;
            fail(ErrorCode::parse, at_line(line) + "distance model: expected auto, spherical or planar, got '" + v + "'");
        }

        const char *model_name(DistanceModel m)
        {
            switch (m)
            {
            case DistanceModel::spherical:
                return "spherical";
            case DistanceModel::planar:
                return "planar";
            default:
                return "auto";
            }
        }

        struct PoseFields
        {
            double range, polar_deg, azimuth_deg;

            static PoseFields of(const Pose &p) { return {p.range(), rad_to_deg(p.polar()), rad_to_deg(p.azimuth())}; }
            Pose pose() const { return Pose::spherical(range, deg_to_rad(polar_deg), deg_to_rad(azimuth_deg)); }
        };

        // Editable view of a scenario; poses and gains are rebuilt on finish()
        struct LinkFields
        {
            LinkScenario s;
            PoseFields tx, rx;
            double tx_gain, rx_gain, f_gain, g_gain;
            bool obstacle_on;
            Obstacle obstacle;
            std::optional<double> expected;
            std::set<std::string> set_keys;

            explicit LinkFields(const LinkScenario &base)
                : s(base), tx(PoseFields::of(base.tx_pose)), rx(PoseFields::of(base.rx_pose)),
                  tx_gain(base.gains.tx_gain_dbi), rx_gain(base.gains.rx_gain_dbi),
                  f_gain(base.gains.ris_rx_side_gain_dbi), g_gain(base.gains.ris_tx_side_gain_dbi),
                  obstacle_on(base.obstacle.has_value()), obstacle(base.obstacle.value_or(Obstacle{}))
            {
            }

            LinkScenario finish() const
            {
                LinkScenario out = s;
                out.tx_pose = tx.pose();
                out.rx_pose = rx.pose();
                out.gains = GainProfile::from_gains(tx_gain, rx_gain, f_gain, g_gain);
                out.obstacle = obstacle_on ? std::optional<Obstacle>(obstacle) : std::nullopt;
                return out;
            }
        };

        std::map<std::string, std::function<void(LinkFields &, const Entry &, const std::string &)>> link_keys()
        {
            using F = LinkFields;
            return {
                {"transmit_power_dbm", [](F &f, const Entry &e, const std::string &k) { f.s.transmit_power_dbm = number(e, k); }},
                {"bandwidth_hz", [](F &f, const Entry &e, const std::string &k) { f.s.bandwidth_hz = number(e, k); }},
                {"noise_figure_db", [](F &f, const Entry &e, const std::string &k) { f.s.noise_figure_db = number(e, k); }},
                {"system_loss_db", [](F &f, const Entry &e, const std::string &k) { f.s.system_loss_db = number(e, k); }},
                {"panel_excess_loss_db", [](F &f, const Entry &e, const std::string &k) { f.s.panel_excess_loss_db = number(e, k); }},
                {"tx_gain_dbi", [](F &f, const Entry &e, const std::string &k) { f.tx_gain = number(e, k); }},
                {"rx_gain_dbi", [](F &f, const Entry &e, const std::string &k) { f.rx_gain = number(e, k); }},
                {"ris_rx_side_gain_dbi", [](F &f, const Entry &e, const std::string &k) { f.f_gain = number(e, k); }},
                {"ris_tx_side_gain_dbi", [](F &f, const Entry &e, const std::string &k) { f.g_gain = number(e, k); }},
                {"tx_range_m", [](F &f, const Entry &e, const std::string &k) { f.tx.range = number(e, k); }},
                {"tx_steer_angle_deg", [](F &f, const Entry &e, const std::string &k) { f.tx.polar_deg = number(e, k); }},
                {"tx_azimuth_deg", [](F &f, const Entry &e, const std::string &k) { f.tx.azimuth_deg = number(e, k); }},
                {"rx_range_m", [](F &f, const Entry &e, const std::string &k) { f.rx.range = number(e, k); }},
                {"rx_polar_deg", [](F &f, const Entry &e, const std::string &k) { f.rx.polar_deg = number(e, k); }},
                {"rx_azimuth_deg", [](F &f, const Entry &e, const std::string &k) { f.rx.azimuth_deg = number(e, k); }},
                {"tx_model", [](F &f, const Entry &e, const std::string &) { f.s.tx_model = distance_model(e.value, e.line); }},
                {"rx_model", [](F &f, const Entry &e, const std::string &) { f.s.rx_model = distance_model(e.value, e.line); }},
                {"ris_present", [](F &f, const Entry &e, const std::string &k) { f.s.ris_present = flag(e, k); }},
                {"obstacle",
                 [](F &f, const Entry &e, const std::string &)
                 {
                     if (e.value == "none")
                         f.obstacle_on = false;
                     else if (e.value == "tx_side" || e.value == "rx_side")
                     {
                         f.obstacle_on = true;
                         f.obstacle.position = e.value == "tx_side" ? ObstaclePosition::tx_side : ObstaclePosition::rx_side;
                     }
                     else
                         fail(ErrorCode::parse, at_line(e.line) + "obstacle: expected none, tx_side or rx_side, got '" + e.value + "'");
                 }},
                {"obstacle_attenuation_db", [](F &f, const Entry &e, const std::string &k) { f.obstacle.attenuation_db = number(e, k); }},
                {"mcs",
                 [](F &f, const Entry &e, const std::string &)
                 {
                     try
                     {
                         f.s.mcs = MCSTable::parse(e.value);
                     }
                     catch (const Error &err)
                     {
                         fail(err.code(), at_line(e.line) + "mcs: " + err.what());
                     }
                 }},
                {"offset_samples", [](F &f, const Entry &e, const std::string &k) { f.s.offset_samples = integer(e, k); }},
            };
        }

        std::string fmt(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.10g", v);
            return buf;
        }

        // Without `required` the two scenario-defining keys are left out, so that
        // a [link] section of defaults does not read back as a scenario
        void describe_link(std::ostream &o, const LinkScenario &s, bool required)
        {
            const auto tx = PoseFields::of(s.tx_pose), rx = PoseFields::of(s.rx_pose);
            if (required)
                o << "transmit_power_dbm = " << fmt(s.transmit_power_dbm) << "\n";
            o << "bandwidth_hz = " << fmt(s.bandwidth_hz) << "\n"
              << "noise_figure_db = " << fmt(s.noise_figure_db) << "\n"
              << "system_loss_db = " << fmt(s.system_loss_db) << "\n"
              << "panel_excess_loss_db = " << fmt(s.panel_excess_loss_db) << "\n"
              << "tx_gain_dbi = " << fmt(s.gains.tx_gain_dbi) << "\n"
              << "rx_gain_dbi = " << fmt(s.gains.rx_gain_dbi) << "\n"
              << "ris_rx_side_gain_dbi = " << fmt(s.gains.ris_rx_side_gain_dbi) << "\n"
              << "ris_tx_side_gain_dbi = " << fmt(s.gains.ris_tx_side_gain_dbi) << "\n"
              << "tx_range_m = " << fmt(tx.range) << "\n"
              << "tx_steer_angle_deg = " << fmt(tx.polar_deg) << "\n"
              << "tx_azimuth_deg = " << fmt(tx.azimuth_deg) << "\n"
              << "rx_range_m = " << fmt(rx.range) << "\n"
              << "rx_polar_deg = " << fmt(rx.polar_deg) << "\n"
              << "rx_azimuth_deg = " << fmt(rx.azimuth_deg) << "\n"
              << "tx_model = " << model_name(s.tx_model) << "\n"
              << "rx_model = " << model_name(s.rx_model) << "\n"
              << "obstacle = "
              << (!s.obstacle ? "none" : s.obstacle->position == ObstaclePosition::tx_side ? "tx_side" : "rx_side") << "\n";
            if (s.obstacle)
                o << "obstacle_attenuation_db = " << fmt(s.obstacle->attenuation_db) << "\n";
            if (required)
                o << "ris_present = " << (s.ris_present ? "true" : "false") << "\n";
            o << "mcs = ";
            for (std::size_t i = 0; i < s.mcs.rows().size(); ++i)
                o << (i ? "," : "") << fmt(s.mcs.rows()[i].min_snr_db) << ":" << fmt(s.mcs.rows()[i].rate_mbps);
            o << "\noffset_samples = " << s.offset_samples << "\n";
        }
    }

    RunConfig RunConfig::parse(const std::string &text, const std::filesystem::path &base_dir, bool lenient)
    {
        RunConfig cfg;
        const auto sections = split_sections(text);

        auto unknown = [&](const std::string &what, int line)
        {
            const std::string msg = at_line(line) + what;
            if (!lenient)
                fail(ErrorCode::parse, msg);
            cfg.warnings.push_back(msg);
        };

        std::set<std::string> seen;
        for (const auto &sec : sections)
        {
            const auto id = sec.kind + (sec.title.empty() ? "" : " " + sec.title);
            if (!seen.insert(id).second)
                fail(ErrorCode::parse, at_line(sec.line) + "section [" + id + "] appears twice");
        }

        // Panel first: the carrier and the element table feed every later section
        std::size_t num_x = 16, num_y = 16;
        double dx = 4.9e-3, dy = 4.9e-3;
        for (const auto &sec : sections)
        {
            if (sec.kind != "panel")
                continue;
            for (const auto &[k, e] : sec.entries)
            {
                if (k == "num_x")
                    num_x = std::size_t(integer(e, k));
                else if (k == "num_y")
                    num_y = std::size_t(integer(e, k));
                else if (k == "spacing_x_m")
                    dx = number(e, k);
                else if (k == "spacing_y_m")
                    dy = number(e, k);
                else if (k == "bits")
                    cfg.bits = integer(e, k);
                else if (k == "mode")
                    cfg.mode = phase_mode(e.value, e.line);
                else if (k == "carrier_hz")
                    cfg.carrier_hz = number(e, k);
                else if (k == "element_table")
                {
                    cfg.element_table_source = e.value;
                    if (e.value != "builtin")
                    {
                        std::filesystem::path p(e.value);
                        if (p.is_relative() && !base_dir.empty())
                            p = base_dir / p;
                        try
                        {
                            cfg.element_table = ElementStateTable::load(p);
                        }
                        catch (const Error &err)
                        {
                            fail(err.code(), at_line(e.line) + "element_table: " + err.what());
                        }
                    }
                }
                else
                    unknown("unknown key '" + k + "' in [panel]", e.line);
            }
        }
        try
        {
            cfg.geometry = ArrayGeometry(num_x, num_y, dx, dy);
        }
        catch (const Error &err)
        {
            fail(err.code(), std::string("[panel]: ") + err.what());
        }
        if (cfg.bits < 1 || cfg.bits > 16)
            fail(ErrorCode::invalid_argument, "[panel]: bits must lie in 1..16");
        wavelength(cfg.carrier_hz);

        cfg.link_defaults.carrier_hz = cfg.carrier_hz;
        cfg.link_defaults.mode = cfg.mode;
        cfg.link_defaults.element_table = cfg.element_table;

        const auto lkeys = link_keys();
        auto apply_link = [&](LinkFields &f, const Section &sec, bool allow_expected)
        {
            for (const auto &[k, e] : sec.entries)
            {
                if (allow_expected && k == "expected_rate_mbps")
                {
                    f.expected = number(e, k);
                    continue;
                }
                const auto it = lkeys.find(k);
                if (it == lkeys.end())
                {
                    unknown("unknown key '" + k + "' in [" + sec.kind + (sec.title.empty() ? "" : " " + sec.title) + "]",
                            e.line);
                    continue;
                }
                it->second(f, e, k);
                f.set_keys.insert(k);
            }
        };

        LinkFields defaults(cfg.link_defaults);
        bool has_link_section = false;
        for (const auto &sec : sections)
        {
            if (sec.kind == "panel")
                continue;
            if (sec.kind == "beam")
            {
                auto tx = PoseFields::of(cfg.beam.tx), rx = PoseFields::of(cfg.beam.rx);
                for (const auto &[k, e] : sec.entries)
                {
                    if (k == "tx_range_m")
                        tx.range = number(e, k);
                    else if (k == "tx_polar_deg")
                        tx.polar_deg = number(e, k);
                    else if (k == "tx_azimuth_deg")
                        tx.azimuth_deg = number(e, k);
                    else if (k == "rx_range_m")
                        rx.range = number(e, k);
                    else if (k == "rx_polar_deg")
                        rx.polar_deg = number(e, k);
                    else if (k == "rx_azimuth_deg")
                        rx.azimuth_deg = number(e, k);
                    else if (k == "tx_model")
                        cfg.beam.tx_model = distance_model(e.value, e.line);
                    else if (k == "rx_model")
                        cfg.beam.rx_model = distance_model(e.value, e.line);
                    else if (k == "phase_offset_deg")
                        cfg.beam.phase_offset = deg_to_rad(number(e, k));
                    else
                        unknown("unknown key '" + k + "' in [beam]", e.line);
                }
                cfg.beam.tx = tx.pose();
                cfg.beam.rx = rx.pose();
            }
            else if (sec.kind == "feed")
            {
                auto pose = PoseFields::of(cfg.feed.pose);
                for (const auto &[k, e] : sec.entries)
                {
                    if (k == "range_m")
                        pose.range = number(e, k);
                    else if (k == "polar_deg")
                        pose.polar_deg = number(e, k);
                    else if (k == "azimuth_deg")
                        pose.azimuth_deg = number(e, k);
                    else if (k == "gain_dbi")
                        cfg.feed.gain_dbi = number(e, k);
                    else if (k == "element_exponent")
                        cfg.feed.element_exponent = number(e, k);
                    else
                        unknown("unknown key '" + k + "' in [feed]", e.line);
                }
                cfg.feed.pose = pose.pose();
                cfg.feed.exponent();
                if (!(cfg.feed.element_exponent >= 0.0))
                    fail(ErrorCode::invalid_argument, "[feed]: element_exponent must be non-negative");
            }
            else if (sec.kind == "link")
            {
                apply_link(defaults, sec, false);
                has_link_section = true;
            }
            else if (sec.kind != "scenario")
                unknown("unknown section [" + sec.kind + "]", sec.line);
        }
        cfg.beam.validate();
        cfg.link_defaults = defaults.finish();

        auto finish_scenario = [&](LinkFields &f, const std::string &name, int line)
        {
            for (const char *req : {"transmit_power_dbm", "ris_present"})
                if (!f.set_keys.count(req))
                    fail(ErrorCode::parse, at_line(line) + "scenario '" + name + "' is missing required key '" + req + "'");
            auto s = f.finish();
            s.name = name;
            try
            {
                s.validate();
            }
            catch (const Error &err)
            {
                fail(err.code(), "scenario '" + name + "': " + err.what());
            }
            cfg.scenarios.push_back({std::move(s), f.expected});
        };

        bool any_scenario = false;
        for (const auto &sec : sections)
        {
            if (sec.kind != "scenario")
                continue;
            any_scenario = true;
            LinkFields f = defaults;
            apply_link(f, sec, true);
            finish_scenario(f, sec.title, sec.line);
        }
        // A lone [link] section that is complete acts as a single scenario
        if (!any_scenario && has_link_section && defaults.set_keys.count("transmit_power_dbm") &&
            defaults.set_keys.count("ris_present"))
        {
            LinkFields f = defaults;
            finish_scenario(f, "link", 0);
        }
        return cfg;
    }

    RunConfig RunConfig::load(const std::filesystem::path &path, bool lenient)
    {
        std::ifstream in(path);
        if (!in)
            fail(ErrorCode::io, "cannot open config '" + path.string() + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        try
        {
            return parse(ss.str(), path.parent_path(), lenient);
        }
        catch (const Error &err)
        {
            fail(err.code(), path.string() + ": " + err.what());
        }
    }

    PatternSource RunConfig::pattern_source(const RISConfiguration &config) const
    {
        PatternSource src;
        src.config = &config;
        src.feed = feed.pose;
        src.feed_exponent = feed.exponent();
        src.element_exponent = feed.element_exponent;
        src.carrier_hz = carrier_hz;
        src.mode = mode;
        src.table = mode == PhaseMode::realized ? &element_table : nullptr;
        return src;
    }

    std::string RunConfig::describe() const
    {
        std::ostringstream o;
        const auto tx = PoseFields::of(beam.tx), rx = PoseFields::of(beam.rx), fd = PoseFields::of(feed.pose);
        o << "[panel]\n"
          << "num_x = " << geometry.num_x() << "\nnum_y = " << geometry.num_y() << "\n"
          << "spacing_x_m = " << fmt(geometry.spacing_x()) << "\nspacing_y_m = " << fmt(geometry.spacing_y()) << "\n"
          << "bits = " << bits << "\nmode = " << (mode == PhaseMode::nominal ? "nominal" : "realized") << "\n"
          << "carrier_hz = " << fmt(carrier_hz) << "\nelement_table = " << element_table_source << "\n\n"
          << "[beam]\n"
          << "tx_range_m = " << fmt(tx.range) << "\ntx_polar_deg = " << fmt(tx.polar_deg)
          << "\ntx_azimuth_deg = " << fmt(tx.azimuth_deg) << "\n"
          << "rx_range_m = " << fmt(rx.range) << "\nrx_polar_deg = " << fmt(rx.polar_deg)
          << "\nrx_azimuth_deg = " << fmt(rx.azimuth_deg) << "\n"
          << "tx_model = " << model_name(beam.tx_model) << "\nrx_model = " << model_name(beam.rx_model) << "\n"
          << "phase_offset_deg = " << fmt(rad_to_deg(beam.phase_offset)) << "\n\n"
          << "[feed]\n"
          << "range_m = " << fmt(fd.range) << "\npolar_deg = " << fmt(fd.polar_deg) << "\nazimuth_deg = "
          << fmt(fd.azimuth_deg) << "\n"
          << "gain_dbi = " << fmt(feed.gain_dbi) << "\nelement_exponent = " << fmt(feed.element_exponent) << "\n\n"
          << "[link]\n";
        describe_link(o, link_defaults, !scenarios.empty());
        for (const auto &entry : scenarios)
        {
            o << "\n[scenario " << entry.scenario.name << "]\n";
            describe_link(o, entry.scenario, true);
            if (entry.expected_rate_mbps)
                o << "expected_rate_mbps = " << fmt(*entry.expected_rate_mbps) << "\n";
        }
        return o.str();
    }
}

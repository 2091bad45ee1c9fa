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

// Run configuration files.
//
// Line-oriented "key = value" text with '#' comments and bracketed sections:
//   [panel]          geometry, resolution, element table, phase mode, carrier
//   [beam]           endpoints and distance models for codebook synthesis
//   [feed]           feed horn for radiation patterns
//   [link]           defaults inherited by every scenario
//   [scenario NAME]  one link operating point, overriding [link]
// Unknown sections or keys are errors unless the lenient flag is set, in
// which case they are reported as warnings. Relative element-table paths are
// resolved against the directory of the config file.

#ifndef TRIS_CONFIG_HPP
#define TRIS_CONFIG_HPP

#include "tris/beam.hpp"
#include "tris/link.hpp"
#include "tris/pattern.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tris
{
    struct FeedConfig
    {
        Pose pose = Pose::spherical(0.05, 0.0, 0.0);
        double gain_dbi = 12.7;
        double element_exponent = 1.0;

        double exponent() const { return exponent_from_gain_dbi(gain_dbi); }
    };

    struct ScenarioEntry
    {
        LinkScenario scenario;
        std::optional<double> expected_rate_mbps;
    };

    struct RunConfig
    {
        ArrayGeometry geometry{16, 16, 4.9e-3, 4.9e-3};
        int bits = 2;
        PhaseMode mode = PhaseMode::nominal;
        double carrier_hz = 27.0e9;
        std::string element_table_source = "builtin";
        ElementStateTable element_table = ElementStateTable::default_2bit();
        BeamSpec beam;
        FeedConfig feed;
        LinkScenario link_defaults;
        std::vector<ScenarioEntry> scenarios;
        std::vector<std::string> warnings; // collected in lenient mode

        static RunConfig defaults() { return RunConfig{}; }
        static RunConfig parse(const std::string &text, const std::filesystem::path &base_dir = {},
                               bool lenient = false);
        static RunConfig load(const std::filesystem::path &path, bool lenient = false);

        // Pattern source for the given codebook with this config's feed
        PatternSource pattern_source(const RISConfiguration &config) const;

        // Every resolved value in the same key = value syntax
        std::string describe() const;
    };
}

#endif

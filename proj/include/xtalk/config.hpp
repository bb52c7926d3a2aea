// SPDX-License-Identifier: Apache-2.0
//
// xtalk: coupled-interconnect crosstalk analysis toolkit
// Copyright (C) 2026 The xtalk authors
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

#pragma once

// Toolkit config document.
//
// A JSON object with blocks:
//   geometry     InterconnectGeometry fields (required), plus shield_separation_um
//   electricals  {"source": "table" | "extract", "coefficients", "mutual"}
//   overrides    direct values: r_total (ohm), l_total / m_signal / m_shield (uH),
//                c_total / cm_signal / cm_shield (pF)
//   termination  driver_resistance_ohm, load_capacitance_ff
//   scenario     {"preset": name} or {"lines": [...], "couplings": [...], "taps": [...]}
//   shield       tap_count | taps, tie_resistance_ohm, width_scale
//   stimulus     kind, amplitude_v, rise_time_ns, delay_ns, points_ns
//   sim          dt_ns, t_end_ns, n_segments, method, output_nodes
//   output       directory, formats

#include "xtalk/engine.hpp"
#include "xtalk/extract.hpp"
#include "xtalk/netbuild.hpp"
#include "xtalk/scenario.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xtalk {

enum class ElectricalsSource { table, extract };

struct ParameterOverrides {
    std::optional<double> r_total;    // ohm
    std::optional<double> l_total;    // uH
    std::optional<double> c_total;    // pF
    std::optional<double> m_signal;   // uH
    std::optional<double> cm_signal;  // pF
    std::optional<double> m_shield;   // uH
    std::optional<double> cm_shield;  // pF
};

struct ShieldConfig {
    std::optional<int> tap_count;
    std::optional<std::vector<double>> taps;
    double tie_resistance_ohm = 0.0;
    double width_scale = 1.0;
};

// Explicit topology. Values use the compat units of ParameterOverrides.
struct ExplicitLine {
    std::string name;
    LineRole role = LineRole::victim;
    double r_total = 0.0;
    double l_total = 0.0;  // uH
    double c_total = 0.0;  // pF
};

struct ExplicitCoupling {
    std::string first;
    std::string second;
    double m_total = 0.0;   // uH
    double cm_total = 0.0;  // pF
};

struct ExplicitScenario {
    std::string name = "custom";
    std::vector<ExplicitLine> lines;
    std::vector<ExplicitCoupling> couplings;
};

struct OutputConfig {
    std::string directory = "out";
    bool csv = true;
    bool json = true;
};

struct ToolkitConfig {
    InterconnectGeometry geometry;
    double shield_separation_um = 2.0;

    ElectricalsSource source = ElectricalsSource::table;
    std::string coefficients = "table-compat";
    MutualConvention mutual = MutualConvention::bracket_only;
    ParameterOverrides overrides;

    TerminationSpec termination;

    std::optional<std::string> preset;
    std::optional<ExplicitScenario> explicit_scenario;
    ShieldConfig shield;

    Stimulus stimulus;  // SI
    SimConfig sim;      // SI
    int n_segments = 12;

    OutputConfig output;

    std::string hash;  // of the canonical document

    std::string scenario_name() const;
};

// The built-in default document for a preset (the shipped configs).
std::string default_document(std::string_view preset = "no-shield");
// Built-in defaults with the given preset, then `assignments`.
ToolkitConfig default_config(std::string_view preset = "no-shield", std::span<const std::string> assignments = {});

// Parses a document, applying `key=value` assignments (dotted paths) first.
// Throws ConfigError; syntax errors carry the line number.
ToolkitConfig parse_config(std::string_view text, std::span<const std::string> assignments = {});
ToolkitConfig load_config(const std::string& path, std::span<const std::string> assignments = {});

// Preset element values after electricals source, overrides and shield settings.
PresetParams resolve_params(const ToolkitConfig& config);

// The network described by the config. Throws the netbuild errors.
CoupledNetwork build_network(const ToolkitConfig& config);

}  // namespace xtalk

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

// Waveform CSV, run summary JSON and SPICE netlist export.

#include "xtalk/config.hpp"
#include "xtalk/engine.hpp"
#include "xtalk/metrics.hpp"
#include "xtalk/netbuild.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace xtalk {

// Header `time,<label>...`, 9 significant digits, one row per sample.
// `kinds` selects the traces written; an empty selection writes all.
void write_waveform_csv(std::ostream& out, const WaveformSet& waveforms, std::span<const TraceKind> kinds = {});
void write_waveform_csv(const std::filesystem::path& path, const WaveformSet& waveforms,
                        std::span<const TraceKind> kinds = {});

// Trace kinds are recovered from the labels: `I(...)` is a branch current,
// `<line>_src` a source terminal, anything else a node.
WaveformSet read_waveform_csv(std::istream& in);
WaveformSet read_waveform_csv(const std::filesystem::path& path);
// Appends the traces of `more` (same time axis) to `into`.
void merge_waveforms(WaveformSet& into, const WaveformSet& more);

TraceKind trace_kind_of(std::string_view label);

// Totals recovered from the network, SI.
struct ResolvedLine {
    std::string name;
    LineRole role;
    double r_total = 0.0;
    double l_total = 0.0;
    double c_total = 0.0;
};

struct ResolvedPair {
    std::string first;
    std::string second;
    double m_total = 0.0;
    double cm_total = 0.0;
    double k = 0.0;
};

struct ResolvedParameters {
    std::vector<ResolvedLine> lines;
    std::vector<ResolvedPair> pairs;
    int n_segments = 0;
    std::vector<std::string> ties;
};

ResolvedParameters resolved_parameters(const CoupledNetwork& network);

struct ScenarioResult {
    std::string scenario;
    std::string toolkit_version;
    std::string timestamp;  // UTC, ISO 8601
    std::string config_hash;
    ResolvedParameters parameters;
    Stimulus stimulus;
    SimConfig sim;
    ScenarioMeasurement measurements;
    std::vector<std::string> files;  // relative to the summary
};

std::string summary_json(const ScenarioResult& result);
void write_summary(const std::filesystem::path& path, const ScenarioResult& result);
std::string utc_timestamp();

enum class TieStyle { zero_volt, tiny_resistor };

std::string_view to_string(TieStyle style);
TieStyle tie_style_from_string(std::string_view name);

inline constexpr double kTinyTieOhms = 1e-9;

struct NetlistOptions {
    TieStyle tie_style = TieStyle::zero_volt;
};

// SPICE deck for the network. Node names are the waveform labels. Throws
// CouplingError if any coupling coefficient is >= 1.
std::string export_netlist(const CoupledNetwork& network, const Stimulus& stimulus, const SimConfig& sim,
                           const NetlistOptions& options = {});

// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace xtalk

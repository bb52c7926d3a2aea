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

// The operations behind the command-line subcommands.

#include "xtalk/config.hpp"
#include "xtalk/io.hpp"
#include "xtalk/simd/kernels.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xtalk {

struct Simulation {
    CoupledNetwork network;
    WaveformSet waveforms;
    ScenarioMeasurement measurement;
};

// Build, simulate and measure without touching the filesystem.
Simulation simulate(const ToolkitConfig& config, const simd::KernelTable& kernels = simd::active());

// Parameter report for the no-shield and shield spacings, side by side.
std::string cmd_extract(const ToolkitConfig& config);

struct RunOutput {
    ScenarioResult result;
    Simulation simulation;
    std::filesystem::path summary_path;  // empty when JSON output is off
};

// Writes <scenario>_voltages.csv, <scenario>_currents.csv and
// <scenario>_summary.json into `out_dir`.
RunOutput cmd_run(const ToolkitConfig& config, const std::filesystem::path& out_dir,
                  const simd::KernelTable& kernels = simd::active());

enum class SweepAxis { tap_count, shield_width_scale, separation, n_segments };

std::string_view to_string(SweepAxis axis);
// Throws ValidationError.
SweepAxis sweep_axis_from_string(std::string_view name);

struct SweepRow {
    double value = 0.0;
    std::optional<double> victim_peak_v;
    std::optional<double> aggressor_delay_s;
    std::optional<double> victim_delay_s;
    std::string status = "ok";  // or "error: <message>"
};

// The config with one axis value applied. Throws ConfigError for values the
// axis cannot take.
ToolkitConfig sweep_point(const ToolkitConfig& config, SweepAxis axis, double value);

// One row per value, in input order. Rows run on up to `threads` workers
// (0: hardware concurrency). Throws ValidationError for fewer than 2 values.
std::vector<SweepRow> cmd_sweep(const ToolkitConfig& config, SweepAxis axis, std::span<const double> values,
                                unsigned threads = 0, const simd::KernelTable& kernels = simd::active());

std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows);

std::string cmd_export_netlist(const ToolkitConfig& config, const NetlistOptions& options = {});

}  // namespace xtalk

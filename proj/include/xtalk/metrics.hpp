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

// Threshold measurements on sampled traces. All crossings are first
// crossings located by linear interpolation between samples.

#include "xtalk/engine.hpp"

#include <optional>
#include <span>
#include <string>

namespace xtalk {

enum class MeasureKind { signal, noise };

struct PeakNoise {
    double peak_v = 0.0;
    double t_peak = 0.0;
};

// max |v - baseline| and the first time it is reached. Throws ValidationError on empty input.
PeakNoise peak_noise(std::span<const double> time, std::span<const double> values, double baseline = 0.0);

struct LevelOptions {
    MeasureKind kind = MeasureKind::signal;
    // Signal kind: settled value; defaults to the last sample.
    std::optional<double> settled;
    // Noise kind: level traces are |v - baseline|.
    double baseline = 0.0;
};

// Time at which the trace first reaches `fraction` of its reference swing:
// signal kind from the first sample toward the settled value, noise kind of
// the peak magnitude.
std::optional<double> crossing_time(std::span<const double> time, std::span<const double> values,
                                    double fraction, const LevelOptions& options = {});

// Output crossing minus source crossing. The source is always measured as a signal.
std::optional<double> propagation_delay(std::span<const double> time, std::span<const double> source,
                                        std::span<const double> output, double threshold = 0.5,
                                        const LevelOptions& output_options = {},
                                        std::optional<double> source_settled = std::nullopt);

std::optional<double> rise_time(std::span<const double> time, std::span<const double> values, double lo = 0.10,
                                double hi = 0.90, const LevelOptions& options = {});

struct TraceMeasurement {
    MeasureKind kind = MeasureKind::signal;
    std::string label;
    double peak_v = 0.0;
    double t_peak = 0.0;
    std::optional<double> delay;
    std::optional<double> rise_time;
};

struct ScenarioRoles {
    std::string source;        // aggressor source terminal
    std::string aggressor;     // aggressor measurement node
    std::string victim;        // victim measurement node
    std::optional<double> source_settled;
    std::optional<double> aggressor_settled;
    double victim_baseline = 0.0;
};

struct ScenarioMeasurement {
    TraceMeasurement aggressor;
    TraceMeasurement victim;
};

// Throws ValidationError when a role's trace is missing.
ScenarioMeasurement measure_scenario(const WaveformSet& waveforms, const ScenarioRoles& roles);

// Far-end roles for a network with one aggressor and one victim, with settled
// levels taken from the DC operating point at `amplitude`.
ScenarioRoles default_roles(const CoupledNetwork& network, double amplitude);

}  // namespace xtalk

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

#include "xtalk/metrics.hpp"

#include "xtalk/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace xtalk {

namespace {

void check_axes(std::span<const double> time, std::span<const double> values) {
    if (values.empty()) throw ValidationError("trace is empty");
    if (time.size() != values.size()) throw ValidationError("trace and time axis differ in length");
}

// First index where f(i) >= 0, interpolated against the previous sample.
template <typename F>
std::optional<double> first_crossing(std::span<const double> time, std::size_t n, F distance) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = distance(i);
        if (d < 0.0) continue;
        if (i == 0) return time[0];
        const double d0 = distance(i - 1);
        const double frac = d0 == d ? 0.0 : -d0 / (d - d0);
        return time[i - 1] + frac * (time[i] - time[i - 1]);
    }
    return std::nullopt;
}

}  // namespace

PeakNoise peak_noise(std::span<const double> time, std::span<const double> values, double baseline) {
    check_axes(time, values);
    PeakNoise p{std::abs(values[0] - baseline), time[0]};
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double m = std::abs(values[i] - baseline);
        if (m > p.peak_v) p = {m, time[i]};
    }
    return p;
}

std::optional<double> crossing_time(std::span<const double> time, std::span<const double> values,
                                    double fraction, const LevelOptions& options) {
    check_axes(time, values);
    if (options.kind == MeasureKind::noise) {
        const double peak = peak_noise(time, values, options.baseline).peak_v;
        if (!(peak > 0.0)) return std::nullopt;
        const double level = fraction * peak;
        return first_crossing(time, values.size(),
                              [&](std::size_t i) { return std::abs(values[i] - options.baseline) - level; });
    }
    const double start = values.front();
    const double settled = options.settled.value_or(values.back());
    const double swing = settled - start;
    if (swing == 0.0 || !std::isfinite(swing)) return std::nullopt;
    const double level = start + fraction * swing;
    const double dir = swing > 0.0 ? 1.0 : -1.0;
    return first_crossing(time, values.size(), [&](std::size_t i) { return dir * (values[i] - level); });
}

std::optional<double> propagation_delay(std::span<const double> time, std::span<const double> source,
                                        std::span<const double> output, double threshold,
                                        const LevelOptions& output_options,
                                        std::optional<double> source_settled) {
    LevelOptions src;
    src.settled = source_settled;
    const auto t_src = crossing_time(time, source, threshold, src);
    const auto t_out = crossing_time(time, output, threshold, output_options);
    if (!t_src || !t_out) return std::nullopt;
    return *t_out - *t_src;
}

std::optional<double> rise_time(std::span<const double> time, std::span<const double> values, double lo,
                                double hi, const LevelOptions& options) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw ValidationError(fmt::format("rise time needs 0 <= lo < hi <= 1 (lo = {}, hi = {})", lo, hi));
    }
    const auto t_lo = crossing_time(time, values, lo, options);
    const auto t_hi = crossing_time(time, values, hi, options);
    if (!t_lo || !t_hi) return std::nullopt;
    return *t_hi - *t_lo;
}

ScenarioMeasurement measure_scenario(const WaveformSet& w, const ScenarioRoles& roles) {
    const auto& src = w.at(roles.source);
    const auto& agg = w.at(roles.aggressor);
    const auto& vic = w.at(roles.victim);

    ScenarioMeasurement m;
    {
        LevelOptions opt;
        opt.settled = roles.aggressor_settled;
        const auto peak = peak_noise(w.time, agg.values);
        m.aggressor = {MeasureKind::signal, agg.label, peak.peak_v, peak.t_peak,
                       propagation_delay(w.time, src.values, agg.values, 0.5, opt, roles.source_settled),
                       rise_time(w.time, agg.values, 0.1, 0.9, opt)};
    }
    {
        LevelOptions opt;
        opt.kind = MeasureKind::noise;
        opt.baseline = roles.victim_baseline;
        const auto peak = peak_noise(w.time, vic.values, roles.victim_baseline);
        m.victim = {MeasureKind::noise, vic.label, peak.peak_v, peak.t_peak,
                    propagation_delay(w.time, src.values, vic.values, 0.5, opt, roles.source_settled),
                    rise_time(w.time, vic.values, 0.1, 0.9, opt)};
    }
    return m;
}

ScenarioRoles default_roles(const CoupledNetwork& net, double amplitude) {
    std::optional<std::size_t> aggressor;
    std::optional<std::size_t> victim;
    for (std::size_t i = 0; i < net.lines.size(); ++i) {
        if (net.lines[i].role == LineRole::aggressor && !aggressor) aggressor = i;
        if (net.lines[i].role == LineRole::victim && !victim) victim = i;
    }
    if (!aggressor) throw ValidationError("network has no aggressor line");
    if (!victim) throw ValidationError("network has no victim line");

    ScenarioRoles roles;
    for (const auto& s : net.sources) {
        if (s.line == *aggressor) roles.source = s.label;
    }
    roles.aggressor = net.nodes[net.load_node(*aggressor)].label;
    roles.victim = net.nodes[net.load_node(*victim)].label;

    const auto settled = dc_operating_point(net, amplitude);
    const auto initial = dc_operating_point(net, 0.0);
    roles.source_settled = amplitude;
    roles.aggressor_settled = settled[net.load_node(*aggressor)];
    roles.victim_baseline = initial[net.load_node(*victim)];
    return roles;
}

}  // namespace xtalk

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

#include "xtalk/commands.hpp"

#include "xtalk/errors.hpp"
#include "xtalk/version.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <thread>

namespace xtalk {

namespace {

double final_value(const Stimulus& s) { return s.breakpoints().back().second; }

std::string opt_num(const std::optional<double>& v) { return v ? fmt::format("{:.9g}", *v) : std::string(); }

}  // namespace

Simulation simulate(const ToolkitConfig& config, const simd::KernelTable& kernels) {
    Simulation s{build_network(config), {}, {}};
    s.waveforms = run_transient(s.network, config.stimulus, config.sim, kernels);
    s.waveforms.config_hash = config.hash;
    const auto roles = default_roles(s.network, final_value(config.stimulus));
    s.measurement = measure_scenario(s.waveforms, roles);
    return s;
}

std::string cmd_extract(const ToolkitConfig& c) {
    ExtractOptions opt;
    opt.coeffs = &CouplingCoefficients::by_name(c.coefficients);
    opt.mutual = c.mutual;

    InterconnectGeometry shielded = c.geometry;
    shielded.separation_um = c.shield_separation_um;
    const std::array bare_geom{c.geometry, c.geometry};
    const std::array shield_geom{shielded, shielded};
    const std::array<PairSeparation, 1> bare_sep{{{0, 1, c.geometry.separation_um}}};
    const std::array<PairSeparation, 1> shield_sep{{{0, 1, c.shield_separation_um}}};
    const auto bare = extract_all(bare_geom, bare_sep, opt);
    const auto with = extract_all(shield_geom, shield_sep, opt);

    const auto& o = c.overrides;
    const double r_sheet = line_resistance(c.geometry.sheet_res_ohm_sq, c.geometry.length_um, c.geometry.width_um);
    const double r = o.r_total.value_or(r_sheet);
    const double l = o.l_total.value_or(bare.lines[0].l_total);
    const double cap = o.c_total ? *o.c_total : bare.lines[0].c_total / compat::kPicofarad;
    const double lm0 = o.m_signal.value_or(bare.pairs.at({0, 1}).m_total);
    const double lm1 = o.m_shield.value_or(with.pairs.at({0, 1}).m_total);
    const double cm0 = o.cm_signal ? *o.cm_signal : bare.pairs.at({0, 1}).cm_total / compat::kPicofarad;
    const double cm1 = o.cm_shield ? *o.cm_shield : with.pairs.at({0, 1}).cm_total / compat::kPicofarad;

    std::string out;
    auto row = [&](std::string_view name, double a, double b, bool overridden) {
        out += fmt::format("{:<22}{:>16.6g}{:>16.6g}{}\n", name, a, b, overridden ? "  (override)" : "");
    };
    out += fmt::format("{:<22}{:>16}{:>16}\n", "parameter", "without shield", "with shield");
    out += fmt::format("{:<22}{:>16.6g}{:>16.6g}\n", "spacing (um)", c.geometry.separation_um,
                       c.shield_separation_um);
    row("R (ohm)", r, r, o.r_total.has_value());
    row("L (uH)", l, l, o.l_total.has_value());
    row("Lm (uH)", lm0, lm1, o.m_signal || o.m_shield);
    row("C (pF/m)", cap, cap, o.c_total.has_value());
    row("Cm (pF/m)", cm0, cm1, o.cm_signal || o.cm_shield);
    out += fmt::format("{:<22}{:>16.6g}\n", "R sheet (ohm)", r_sheet);
    out += fmt::format("coefficients: {}, mutual: {}\n", c.coefficients,
                       c.mutual == MutualConvention::full ? "full" : "bracket-only");
    return out;
}

RunOutput cmd_run(const ToolkitConfig& config, const std::filesystem::path& out_dir,
                  const simd::KernelTable& kernels) {
    RunOutput r{{}, simulate(config, kernels), {}};
    const auto& w = r.simulation.waveforms;
    const std::string stem = config.scenario_name();

    auto& res = r.result;
    res.scenario = stem;
    res.toolkit_version = std::string(kVersion);
    res.timestamp = utc_timestamp();
    res.config_hash = config.hash;
    res.parameters = resolved_parameters(r.simulation.network);
    res.stimulus = config.stimulus;
    res.sim = config.sim;
    res.measurements = r.simulation.measurement;

    if (config.output.csv) {
        constexpr std::array voltage_kinds{TraceKind::node, TraceKind::source};
        constexpr std::array current_kinds{TraceKind::branch};
        const std::string volts = stem + "_voltages.csv";
        write_waveform_csv(out_dir / volts, w, voltage_kinds);
        res.files.push_back(volts);
        const bool any_current =
            std::any_of(w.traces.begin(), w.traces.end(), [](const Trace& t) { return t.kind == TraceKind::branch; });
        if (any_current) {
            const std::string amps = stem + "_currents.csv";
            write_waveform_csv(out_dir / amps, w, current_kinds);
            res.files.push_back(amps);
        }
    }
    if (config.output.json) {
        r.summary_path = out_dir / (stem + "_summary.json");
        write_summary(r.summary_path, res);
    }
    return r;
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::tap_count: return "tap_count";
    case SweepAxis::shield_width_scale: return "shield_width_scale";
    case SweepAxis::separation: return "separation";
    case SweepAxis::n_segments: return "n_segments";
    }
    return "?";
}

SweepAxis sweep_axis_from_string(std::string_view name) {
    for (auto a : {SweepAxis::tap_count, SweepAxis::shield_width_scale, SweepAxis::separation, SweepAxis::n_segments}) {
        if (to_string(a) == name) return a;
    }
    throw ValidationError(
        fmt::format("unknown sweep axis '{}' (tap_count, shield_width_scale, separation, n_segments)", name));
}

ToolkitConfig sweep_point(const ToolkitConfig& config, SweepAxis axis, double value) {
    auto as_count = [&](int min) {
        if (!(value >= min) || value != std::floor(value) || value > 1e6) {
            throw ConfigError(fmt::format("{} needs an integer >= {} (got {})", to_string(axis), min, value));
        }
        return static_cast<int>(value);
    };
    ToolkitConfig c = config;
    switch (axis) {
    case SweepAxis::tap_count:
        c.shield.taps.reset();
        c.shield.tap_count = as_count(0);
        break;
    case SweepAxis::shield_width_scale:
        if (!(value > 0.0)) throw ConfigError(fmt::format("shield_width_scale must be > 0 (got {})", value));
        c.shield.width_scale = value;
        break;
    case SweepAxis::separation: {
        if (!(value > 0.0)) throw ConfigError(fmt::format("separation must be > 0 (got {})", value));
        const bool shielded = c.preset && preset_from_string(*c.preset) != Preset::no_shield;
        (shielded ? c.shield_separation_um : c.geometry.separation_um) = value;
        c.source = ElectricalsSource::extract;
        break;
    }
    case SweepAxis::n_segments:
        c.n_segments = as_count(1);
        break;
    }
    return c;
}

std::vector<SweepRow> cmd_sweep(const ToolkitConfig& config, SweepAxis axis, std::span<const double> values,
                                unsigned threads, const simd::KernelTable& kernels) {
    if (values.size() < 2) throw ValidationError("a sweep needs at least two values");
    std::vector<SweepRow> rows(values.size());

    auto run_row = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.value = values[i];
        try {
            const auto s = simulate(sweep_point(config, axis, values[i]), kernels);
            row.victim_peak_v = s.measurement.victim.peak_v;
            row.aggressor_delay_s = s.measurement.aggressor.delay;
            row.victim_delay_s = s.measurement.victim.delay;
        } catch (const std::exception& e) {
            row.status = fmt::format("error: {}", e.what());
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, values.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < values.size(); i = next++) run_row(i);
        });
    }
    pool.clear();
    return rows;
}

std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows) {
    std::string out = "axis,value,victim_peak_v,aggressor_delay_s,victim_delay_s,status\n";
    for (const auto& r : rows) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        out += fmt::format("{},{:.9g},{},{},{},{}\n", to_string(axis), r.value, opt_num(r.victim_peak_v),
                           opt_num(r.aggressor_delay_s), opt_num(r.victim_delay_s), status);
    }
    return out;
}

std::string cmd_export_netlist(const ToolkitConfig& config, const NetlistOptions& options) {
    return export_netlist(build_network(config), config.stimulus, config.sim, options);
}

}  // namespace xtalk

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

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config;
    std::string preset;
    std::string out;
    std::vector<std::string> sets;
    std::string simd;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "Config document (JSON)");
    cmd->add_option("--preset", c.preset, "Scenario preset: no-shield, shield, shield-3taps");
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_option("--set", c.sets, "Override a config value, key.path=value (repeatable)");
    cmd->add_option("--simd", c.simd, "Kernel backend: scalar, avx2, neon (default: best available)");
}

xtalk::ToolkitConfig load(const Common& c) {
    if (!c.simd.empty()) {
        try {
            xtalk::simd::select(xtalk::simd::backend_from_string(c.simd));
        } catch (const std::invalid_argument& e) {
            throw xtalk::ConfigError(e.what());
        }
    }
    std::vector<std::string> sets;
    if (!c.preset.empty()) sets.push_back(fmt::format("scenario={{\"preset\":\"{}\"}}", c.preset));
    sets.insert(sets.end(), c.sets.begin(), c.sets.end());
    if (!c.config.empty()) return xtalk::load_config(c.config, sets);
    if (c.preset.empty()) throw xtalk::ConfigError("give --config or --preset");
    return xtalk::default_config(c.preset, c.sets);
}

fs::path out_dir(const Common& c, const xtalk::ToolkitConfig& cfg) {
    return c.out.empty() ? fs::path(cfg.output.directory) : fs::path(c.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled-interconnect crosstalk toolkit"};
    app.set_version_flag("--version", std::string(xtalk::kVersion));
    app.require_subcommand(1);

    Common extract_opts, run_opts, sweep_opts, netlist_opts;

    auto* extract = app.add_subcommand("extract", "Report line parameters with and without a shield");
    add_common(extract, extract_opts);

    auto* run = app.add_subcommand("run", "Simulate one scenario and write waveforms and a summary");
    add_common(run, run_opts);

    auto* sweep = app.add_subcommand("sweep", "Run a scenario over the values of one parameter");
    add_common(sweep, sweep_opts);
    std::string axis;
    std::vector<double> values;
    unsigned threads = 0;
    sweep->add_option("--axis", axis, "tap_count, shield_width_scale, separation or n_segments")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
    sweep->add_option("--threads", threads, "Worker threads (0: all cores)");

    auto* netlist = app.add_subcommand("export-netlist", "Write a SPICE deck for the scenario");
    add_common(netlist, netlist_opts);
    std::string tie_style = "zero-volt";
    netlist->add_option("--tie-style", tie_style, "Shield ties: zero-volt or tiny-resistor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*extract) {
            const auto cfg = load(extract_opts);
            const std::string report = xtalk::cmd_extract(cfg);
            std::cout << report;
            if (!extract_opts.out.empty()) xtalk::write_text_file(fs::path(extract_opts.out) / "parameters.txt", report);
        } else if (*run) {
            const auto cfg = load(run_opts);
            const auto r = xtalk::cmd_run(cfg, out_dir(run_opts, cfg));
            const auto& m = r.result.measurements;
            auto ns = [](const std::optional<double>& v) { return v ? fmt::format("{:.4f} ns", *v * 1e9) : "n/a"; };
            fmt::print("{}: victim peak {:.6g} V at {:.4f} ns; aggressor delay {}, rise {}\n", r.result.scenario,
                       m.victim.peak_v, m.victim.t_peak * 1e9, ns(m.aggressor.delay), ns(m.aggressor.rise_time));
            for (const auto& f : r.result.files) fmt::print("wrote {}\n", (out_dir(run_opts, cfg) / f).string());
            if (!r.summary_path.empty()) fmt::print("wrote {}\n", r.summary_path.string());
        } else if (*sweep) {
            const auto ax = xtalk::sweep_axis_from_string(axis);
            const auto cfg = load(sweep_opts);
            const auto rows = xtalk::cmd_sweep(cfg, ax, values, threads);
            const std::string csv = xtalk::sweep_csv(ax, rows);
            std::cout << csv;
            const auto path = out_dir(sweep_opts, cfg) / fmt::format("{}_sweep_{}.csv", cfg.scenario_name(), axis);
            xtalk::write_text_file(path, csv);
        } else if (*netlist) {
            const auto cfg = load(netlist_opts);
            xtalk::NetlistOptions opt;
            opt.tie_style = xtalk::tie_style_from_string(tie_style);
            const std::string deck = xtalk::cmd_export_netlist(cfg, opt);
            if (netlist_opts.out.empty()) {
                std::cout << deck;
            } else {
                const auto path = fs::path(netlist_opts.out) / (cfg.scenario_name() + ".cir");
                xtalk::write_text_file(path, deck);
                fmt::print("wrote {}\n", path.string());
            }
        }
    } catch (const xtalk::Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return e.exit_code();
    } catch (const fs::filesystem_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 0;
}

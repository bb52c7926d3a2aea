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

#include "xtalk/io.hpp"

#include <chrono>
#include <cmath>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>
#include <map>

namespace xtalk {

using nlohmann::ordered_json;

namespace {

std::string_view role_name(LineRole r) {
    switch (r) {
    case LineRole::aggressor: return "aggressor";
    case LineRole::victim: return "victim";
    case LineRole::shield: return "shield";
    }
    return "?";
}

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json measurement(const TraceMeasurement& m) {
    return {{"kind", m.kind == MeasureKind::signal ? "signal" : "noise"},
            {"node", m.label},
            {"peak_v", m.peak_v},
            {"t_peak_s", m.t_peak},
            {"delay_50_s", opt(m.delay)},
            {"rise_10_90_s", opt(m.rise_time)}};
}

}  // namespace

ResolvedParameters resolved_parameters(const CoupledNetwork& net) {
    ResolvedParameters p;
    p.n_segments = net.n_segments;
    for (const auto& l : net.lines) p.lines.push_back({l.name, l.role, 0.0, 0.0, 0.0});

    auto line_of = [&](NodeId n) { return net.nodes[n].line; };
    for (const auto& r : net.resistors) p.lines[line_of(r.a == kGround ? r.b : r.a)].r_total += r.ohms;
    for (const auto& l : net.inductors) p.lines[l.line].l_total += l.henries;

    std::map<std::pair<std::size_t, std::size_t>, ResolvedPair> pairs;
    auto pair_at = [&](std::size_t a, std::size_t b) -> ResolvedPair& {
        if (a > b) std::swap(a, b);
        auto& rp = pairs[{a, b}];
        rp.first = net.lines[a].name;
        rp.second = net.lines[b].name;
        return rp;
    };
    for (const auto& c : net.capacitors) {
        if (c.name.starts_with("Cload_")) continue;
        if (c.b == kGround || c.a == kGround) {
            p.lines[line_of(c.a == kGround ? c.b : c.a)].c_total += c.farads;
        } else {
            pair_at(line_of(c.a), line_of(c.b)).cm_total += c.farads;
        }
    }
    for (const auto& m : net.mutuals) {
        const auto& a = net.inductors[m.first_branch];
        const auto& b = net.inductors[m.second_branch];
        auto& rp = pair_at(a.line, b.line);
        rp.m_total += m.henries;
        rp.k = m.henries / std::sqrt(a.henries * b.henries);
    }
    for (auto& [key, rp] : pairs) p.pairs.push_back(rp);
    for (const auto& t : net.ties) p.ties.push_back(t.name);
    return p;
}

std::string summary_json(const ScenarioResult& r) {
    ordered_json lines = ordered_json::array();
    for (const auto& l : r.parameters.lines) {
        lines.push_back({{"name", l.name},
                         {"role", role_name(l.role)},
                         {"r_total_ohm", l.r_total},
                         {"l_total_h", l.l_total},
                         {"c_total_f", l.c_total}});
    }
    ordered_json pairs = ordered_json::array();
    for (const auto& p : r.parameters.pairs) {
        pairs.push_back({{"first", p.first},
                         {"second", p.second},
                         {"m_total_h", p.m_total},
                         {"cm_total_f", p.cm_total},
                         {"k", p.k}});
    }
    ordered_json stim = {{"kind", to_string(r.stimulus.kind)},
                         {"amplitude_v", r.stimulus.amplitude_v},
                         {"rise_time_s", r.stimulus.rise_time_s},
                         {"delay_s", r.stimulus.delay_s}};
    if (r.stimulus.kind == Stimulus::Kind::pwl) stim["points"] = r.stimulus.points;

    const ordered_json doc = {
        {"scenario", r.scenario},
        {"toolkit_version", r.toolkit_version},
        {"timestamp", r.timestamp},
        {"config_hash", r.config_hash},
        {"parameters",
         {{"n_segments", r.parameters.n_segments}, {"lines", lines}, {"pairs", pairs}, {"ties", r.parameters.ties}}},
        {"stimulus", stim},
        {"sim", {{"dt_s", r.sim.dt}, {"t_end_s", r.sim.t_end}, {"method", to_string(r.sim.method)}}},
        {"measurements", {{"aggressor", measurement(r.measurements.aggressor)},
                          {"victim", measurement(r.measurements.victim)}}},
        {"files", r.files},
    };
    return doc.dump(2) + "\n";
}

void write_summary(const std::filesystem::path& path, const ScenarioResult& result) {
    write_text_file(path, summary_json(result));
}

std::string utc_timestamp() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
}

}  // namespace xtalk

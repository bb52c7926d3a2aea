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

#include "xtalk/errors.hpp"
#include "xtalk/version.hpp"

#include <cmath>
#include <fmt/format.h>

namespace xtalk {

std::string_view to_string(TieStyle style) { return style == TieStyle::zero_volt ? "zero-volt" : "tiny-resistor"; }

TieStyle tie_style_from_string(std::string_view name) {
    if (name == "zero-volt") return TieStyle::zero_volt;
    if (name == "tiny-resistor") return TieStyle::tiny_resistor;
    throw ValidationError(fmt::format("unknown tie style '{}' (zero-volt or tiny-resistor)", name));
}

namespace {

std::string num(double v) { return fmt::format("{:.9g}", v); }

std::string pwl(const Stimulus& s) {
    std::string out = "PWL(";
    bool first = true;
    for (const auto& [t, v] : s.breakpoints()) {
        if (!first) out += ' ';
        out += num(t) + ' ' + num(v);
        first = false;
    }
    return out + ')';
}

}  // namespace

std::string export_netlist(const CoupledNetwork& net, const Stimulus& stimulus, const SimConfig& sim,
                           const NetlistOptions& options) {
    stimulus.validate();
    sim.validate();
    for (const auto& f : validate_network(net)) {
        if (f.kind == FindingKind::spd) throw CouplingError(fmt::format("refusing to export: {}: {}", f.element, f.message));
    }
    for (const auto& m : net.mutuals) {
        const double k = m.henries / std::sqrt(net.inductors[m.first_branch].henries *
                                               net.inductors[m.second_branch].henries);
        if (!(std::abs(k) < 1.0)) {
            throw CouplingError(fmt::format("refusing to export: {} has k = {:.6g}", m.name, k));
        }
    }

    auto node = [&](NodeId n) { return net.nodes[n].label; };
    std::string deck;
    auto card = [&](std::string_view text) {
        deck += text;
        deck += '\n';
    };

    card(fmt::format("xtalk {} crosstalk deck", net.scenario));
    card(fmt::format("* generated by xtalk {}; {} segments per line", kVersion, net.n_segments));
    card("* node names match the waveform CSV columns");
    card("* K = M / sqrt(Li * Lj) per segment pair; M is the line mutual inductance");
    card("* divided by the segment count, in the toolkit's configured convention");
    card("* (bracket-only unless the full 0.002 l factor was selected)");

    card("* sources");
    for (const auto& s : net.sources) {
        const std::string terminal = s.series_ohm > 0.0 ? s.label : node(s.node);
        card(fmt::format("{} {} 0 {}", s.name, terminal, s.driven ? pwl(stimulus) : std::string("DC 0")));
        if (s.series_ohm > 0.0) {
            card(fmt::format("Rdrv_{} {} {} {}", net.lines[s.line].name, s.label, node(s.node), num(s.series_ohm)));
        }
    }
    card("* line segments");
    for (const auto& r : net.resistors) card(fmt::format("{} {} {} {}", r.name, node(r.a), node(r.b), num(r.ohms)));
    for (const auto& l : net.inductors) card(fmt::format("{} {} {} {}", l.name, node(l.a), node(l.b), num(l.henries)));
    for (const auto& c : net.capacitors) card(fmt::format("{} {} {} {}", c.name, node(c.a), node(c.b), num(c.farads)));
    if (!net.mutuals.empty()) {
        card("* mutual coupling");
        for (const auto& m : net.mutuals) {
            const auto& a = net.inductors[m.first_branch];
            const auto& b = net.inductors[m.second_branch];
            card(fmt::format("{} {} {} {}", m.name, a.name, b.name, num(m.henries / std::sqrt(a.henries * b.henries))));
        }
    }
    if (!net.ties.empty()) {
        card(fmt::format("* shield ties ({})", to_string(options.tie_style)));
        for (const auto& t : net.ties) {
            if (t.ohms > 0.0) {
                card(fmt::format("R{} {} 0 {}", t.name, node(t.node), num(t.ohms)));
            } else if (options.tie_style == TieStyle::zero_volt) {
                card(fmt::format("V{} {} 0 DC 0", t.name, node(t.node)));
            } else {
                card(fmt::format("R{} {} 0 {}", t.name, node(t.node), num(kTinyTieOhms)));
            }
        }
    }
    card(fmt::format(".tran {} {}", num(sim.dt), num(sim.t_end)));
    card(".end");
    return deck;
}

}  // namespace xtalk

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

#include "xtalk/scenario.hpp"

#include "xtalk/errors.hpp"

#include <array>
#include <fmt/format.h>

namespace xtalk {

std::string_view to_string(Preset preset) {
    switch (preset) {
    case Preset::no_shield: return "no-shield";
    case Preset::shield: return "shield";
    case Preset::shield_3taps: return "shield-3taps";
    }
    return "?";
}

Preset preset_from_string(std::string_view name) {
    for (Preset p : {Preset::no_shield, Preset::shield, Preset::shield_3taps}) {
        if (to_string(p) == name) return p;
    }
    throw ValidationError(fmt::format("unknown scenario preset '{}'", name));
}

PresetParams params_from_geometry(const InterconnectGeometry& no_shield, double shield_separation_um,
                                  const ExtractOptions& options) {
    InterconnectGeometry shielded = no_shield;
    shielded.separation_um = shield_separation_um;

    const std::array<InterconnectGeometry, 2> pair_geom{no_shield, no_shield};
    const std::array<PairSeparation, 1> signal_pair{{{0, 1, no_shield.separation_um}}};
    const auto bare = extract_all(pair_geom, signal_pair, options);

    const std::array<InterconnectGeometry, 2> shield_geom{shielded, shielded};
    const std::array<PairSeparation, 1> shield_pair{{{0, 1, shield_separation_um}}};
    const auto with_shield = extract_all(shield_geom, shield_pair, options);

    PresetParams p;
    p.r_line = bare.lines[0].r_total;
    p.l_line = bare.lines[0].l_total * compat::kInductance;
    p.c_line = bare.lines[0].c_total * compat::kCapacitance;
    p.m_signal = bare.pairs.at({0, 1}).m_total * compat::kInductance;
    p.cm_signal = bare.pairs.at({0, 1}).cm_total * compat::kCapacitance;
    p.m_shield = with_shield.pairs.at({0, 1}).m_total * compat::kInductance;
    p.cm_shield = with_shield.pairs.at({0, 1}).cm_total * compat::kCapacitance;
    return p;
}

void apply_shield_width(PresetParams& p, const InterconnectGeometry& g, double scale) {
    if (!(scale > 0.0)) throw DomainError(fmt::format("shield width scale must be > 0 (got {})", scale));
    const double w = g.width_um * scale;
    const double l_ratio = self_inductance(g.length_um, w, g.thickness_um, g.lambda) /
                           self_inductance(g.length_um, g.width_um, g.thickness_um, g.lambda);
    const double c_ratio = line_capacitance(w, g.height_um, g.thickness_um, g.eps_rel) /
                           line_capacitance(g.width_um, g.height_um, g.thickness_um, g.eps_rel);
    p.shield_r = p.r_line / scale;
    p.shield_l = p.l_line * l_ratio;
    p.shield_c = p.c_line * c_ratio;
}

CoupledNetwork scenario_preset(Preset preset, const PresetParams& p) {
    const LineSpec aggressor{"agg", LineRole::aggressor, p.r_line, p.l_line, p.c_line};
    const LineSpec victim{"vic", LineRole::victim, p.r_line, p.l_line, p.c_line};

    if (preset == Preset::no_shield) {
        const std::array lines{aggressor, victim};
        const std::array couplings{LineCoupling{0, 1, p.m_signal, p.cm_signal}};
        return build_ladder(lines, couplings, p.termination, std::nullopt, p.n_segments, std::string(to_string(preset)));
    }

    const LineSpec shield{"shd", LineRole::shield, p.shield_r.value_or(p.r_line), p.shield_l.value_or(p.l_line),
                          p.shield_c.value_or(p.c_line)};
    const std::array lines{aggressor, shield, victim};
    const std::array couplings{
        LineCoupling{0, 1, p.m_shield, p.cm_shield},
        LineCoupling{1, 2, p.m_shield, p.cm_shield},
        LineCoupling{0, 2, p.m_signal, 0.0},
    };
    TapSchedule taps = p.taps.value_or(TapSchedule::uniform(preset == Preset::shield_3taps ? 3 : 0));
    taps.tie_resistance_ohm = p.tie_resistance_ohm;
    return build_ladder(lines, couplings, p.termination, taps, p.n_segments, std::string(to_string(preset)));
}

CoupledNetwork scenario_preset(std::string_view name, const PresetParams& params) {
    return scenario_preset(preset_from_string(name), params);
}

}  // namespace xtalk

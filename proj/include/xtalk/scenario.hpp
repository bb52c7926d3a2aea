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

// Aggressor / victim / shield configurations.
//
// Formula outputs are turned into simulated element values with the compat
// reading of the parameter table: inductances in uH, capacitances per meter
// taken as totals in F, resistances in ohms. Time in configs is in ns.

#include "xtalk/extract.hpp"
#include "xtalk/netbuild.hpp"

#include <optional>
#include <string_view>

namespace xtalk {

namespace compat {

inline constexpr double kInductance = 1e-6;   // formula unit -> H
inline constexpr double kCapacitance = 1.0;   // F/m value -> F
inline constexpr double kPicofarad = 1e-12;
inline constexpr double kTime = 1e-9;         // time-unit -> s

}  // namespace compat

// The tabulated parameter set, formula units.
namespace tabulated {

inline constexpr double kLineResistance = 500.0;
inline constexpr double kLineInductance = 83.24;
inline constexpr double kMutualNoShield = 8.21;
inline constexpr double kMutualShield = 7.51;
inline constexpr double kLineCapacitance = 134.41e-12;
inline constexpr double kCouplingNoShield = 69.50e-12;
inline constexpr double kCouplingShield = 27.47e-12;

}  // namespace tabulated

enum class Preset { no_shield, shield, shield_3taps };

std::string_view to_string(Preset preset);
// Throws ValidationError for unknown names.
Preset preset_from_string(std::string_view name);

// SI element values for the preset builders.
struct PresetParams {
    double r_line = tabulated::kLineResistance;
    double l_line = tabulated::kLineInductance * compat::kInductance;
    double c_line = tabulated::kLineCapacitance * compat::kCapacitance;
    double m_signal = tabulated::kMutualNoShield * compat::kInductance;    // aggressor-victim
    double cm_signal = tabulated::kCouplingNoShield * compat::kCapacitance;
    double m_shield = tabulated::kMutualShield * compat::kInductance;      // signal-shield
    double cm_shield = tabulated::kCouplingShield * compat::kCapacitance;

    // Shield totals; the signal-line values when unset.
    std::optional<double> shield_r;
    std::optional<double> shield_l;
    std::optional<double> shield_c;

    TerminationSpec termination;
    int n_segments = 12;
    double tie_resistance_ohm = 0.0;
    // Overrides the preset's interior taps (shield presets only).
    std::optional<TapSchedule> taps;
};

// Line and pair values from the formulas, converted to SI. `no_shield` holds
// the aggressor-victim spacing, `shield_separation_um` the signal-shield one.
PresetParams params_from_geometry(const InterconnectGeometry& no_shield, double shield_separation_um,
                                  const ExtractOptions& options);

// Scales the shield width by `scale`: resistance by 1/scale, inductance and
// capacitance by the formula ratio at the wider width.
void apply_shield_width(PresetParams& params, const InterconnectGeometry& geometry, double scale);

CoupledNetwork scenario_preset(Preset preset, const PresetParams& params);
CoupledNetwork scenario_preset(std::string_view name, const PresetParams& params);

}  // namespace xtalk

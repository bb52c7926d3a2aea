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

// Closed-form parasitic extraction for on-chip interconnect.
//
// All formulas are evaluated exactly as written with lengths in micrometers.
// Inductances come out in "formula units" (the Table-style uH labels) and
// capacitances in F/m. Nothing here converts to SI element values; see
// scenario.hpp for the compat conventions used when simulating.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xtalk {

// Permittivity of free space as used by the capacitance formulas.
inline constexpr double kEpsilon0 = 8.86e-12;

struct InterconnectGeometry {
    double length_um = 5000.0;
    double width_um = 2.0;
    double thickness_um = 2.0;
    double height_um = 2.0;       // track to substrate
    double separation_um = 1.0;   // spacing to the named neighbour
    double eps_rel = 3.9;
    double sheet_res_ohm_sq = 0.05;
    double lambda = 1.0;

    // Throws DomainError naming the first offending field.
    void validate() const;
};

struct CouplingCoefficients {
    std::string_view name;
    double a1;
    double a2;
    double a3;
    double e1;
    double e2;
    double e_spacing;

    // As printed: 1.035(w/h) + 1.83(t/h)^-0.22 - 1.07(t/h)^-0.22, times (d/h)^-0.34.
    static const CouplingCoefficients& printed();
    // 0.03(w/h) + 0.83(t/h) - 0.07(t/h)^0.222, times (d/h)^-1.34. Reproduces the tabulated C_m.
    static const CouplingCoefficients& table_compat();
    // Throws DomainError for unknown names.
    static const CouplingCoefficients& by_name(std::string_view name);
};

// sheet * (length / width), ohms.
double line_resistance(double sheet_res_ohm_sq, double length_um, double width_um);

// 0.002 l [ln(2l/(w+t)) + 0.5 - ln(lambda)]. May be negative for very short lines.
double self_inductance(double length_um, double width_um, double thickness_um, double lambda);

// The bracket ln(l/d + sqrt(l^2/d^2)) - sqrt(1 + d^2/l^2) + d/l.
double mutual_inductance_bracket(double length_um, double separation_um);

// 0.002 l times the bracket.
double mutual_inductance(double length_um, double separation_um);

// eps [(w/h) + 0.77 + 1.06 (w/h)^0.25 + 1.06 (t/h)^0.5], F/m.
double line_capacitance(double width_um, double height_um, double thickness_um, double eps_rel);

// eps [a1 (w/h) + a2 (t/h)^e1 + a3 (t/h)^e2] (d/h)^e_spacing, F/m.
double coupling_capacitance(double width_um, double height_um, double thickness_um,
                            double separation_um, double eps_rel,
                            const CouplingCoefficients& coeffs);

enum class MutualConvention {
    bracket_only,  // tabulated L_m values
    full,          // with the 0.002 l prefactor
};

struct LineParameters {
    std::string name;
    double r_total = 0.0;
    double l_total = 0.0;
    double c_total = 0.0;
};

struct PairParameters {
    double m_total = 0.0;
    double cm_total = 0.0;
};

// Per-line R/L/C plus pairwise M and Cm, keyed by (lower, higher) line index.
class LineElectricals {
public:
    std::vector<LineParameters> lines;
    std::map<std::pair<std::size_t, std::size_t>, PairParameters> pairs;

    // Symmetric lookup; nullopt for undeclared pairs.
    std::optional<PairParameters> pair(std::size_t i, std::size_t j) const;

    // m / sqrt(l_i l_j).
    double coupling_coefficient(std::size_t i, std::size_t j) const;

    // Throws ValidationError if any entry is non-finite / non-positive or any k >= 1.
    void validate() const;
};

struct PairSeparation {
    std::size_t first;
    std::size_t second;
    double separation_um;
};

// Direct values that replace the formula results.
struct ExtractOverrides {
    std::optional<double> r_total;
    std::optional<double> l_total;
    std::optional<double> c_total;
    std::optional<double> m_total;
    std::optional<double> cm_total;
};

struct ExtractOptions {
    const CouplingCoefficients* coeffs = &CouplingCoefficients::table_compat();
    MutualConvention mutual = MutualConvention::bracket_only;
    ExtractOverrides overrides;
};

// Lines are given in physical order; only neighbouring indices couple
// capacitively, every declared pair couples inductively. A separation entry
// is required for every neighbouring pair.
LineElectricals extract_all(std::span<const InterconnectGeometry> geometries,
                            std::span<const PairSeparation> separations,
                            const ExtractOptions& options = {},
                            std::span<const std::string> names = {});

}  // namespace xtalk

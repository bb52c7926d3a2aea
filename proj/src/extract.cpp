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

#include "xtalk/extract.hpp"

#include "xtalk/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace xtalk {

namespace {

void require_positive(double value, std::string_view what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(fmt::format("{} must be positive and finite (got {})", what, value));
    }
}

}  // namespace

void InterconnectGeometry::validate() const {
    require_positive(length_um, "length_um");
    require_positive(width_um, "width_um");
    require_positive(thickness_um, "thickness_um");
    require_positive(height_um, "height_um");
    require_positive(separation_um, "separation_um");
    require_positive(sheet_res_ohm_sq, "sheet_res_ohm_sq");
    require_positive(lambda, "lambda");
    if (!(eps_rel >= 1.0) || !std::isfinite(eps_rel)) {
        throw DomainError(fmt::format("eps_rel must be >= 1 (got {})", eps_rel));
    }
}

const CouplingCoefficients& CouplingCoefficients::printed() {
    static const CouplingCoefficients set{"paper-literal", 1.035, 1.83, -1.07, -0.22, -0.22, -0.34};
    return set;
}

const CouplingCoefficients& CouplingCoefficients::table_compat() {
    static const CouplingCoefficients set{"table-compat", 0.03, 0.83, -0.07, 1.0, 0.222, -1.34};
    return set;
}

const CouplingCoefficients& CouplingCoefficients::by_name(std::string_view name) {
    if (name == printed().name) return printed();
    if (name == table_compat().name) return table_compat();
    throw DomainError(fmt::format("unknown coupling coefficient set '{}'", name));
}

double line_resistance(double sheet_res_ohm_sq, double length_um, double width_um) {
    require_positive(sheet_res_ohm_sq, "sheet resistance");
    require_positive(length_um, "length");
    require_positive(width_um, "width");
    return sheet_res_ohm_sq * (length_um / width_um);
}

double self_inductance(double length_um, double width_um, double thickness_um, double lambda) {
    require_positive(length_um, "length");
    require_positive(width_um, "width");
    require_positive(thickness_um, "thickness");
    require_positive(lambda, "lambda");
    const double l = length_um;
    return 0.002 * l * (std::log(2.0 * l / (width_um + thickness_um)) + 0.5 - std::log(lambda));
}

double mutual_inductance_bracket(double length_um, double separation_um) {
    require_positive(length_um, "length");
    require_positive(separation_um, "separation");
    const double l = length_um;
    const double d = separation_um;
    return std::log(l / d + std::sqrt((l * l) / (d * d))) - std::sqrt(1.0 + (d * d) / (l * l)) + d / l;
}

double mutual_inductance(double length_um, double separation_um) {
    return 0.002 * length_um * mutual_inductance_bracket(length_um, separation_um);
}

double line_capacitance(double width_um, double height_um, double thickness_um, double eps_rel) {
    require_positive(width_um, "width");
    require_positive(height_um, "height");
    require_positive(thickness_um, "thickness");
    require_positive(eps_rel, "eps_rel");
    const double wh = width_um / height_um;
    const double th = thickness_um / height_um;
    const double eps = eps_rel * kEpsilon0;
    return eps * (wh + 0.77 + 1.06 * std::pow(wh, 0.25) + 1.06 * std::pow(th, 0.5));
}

double coupling_capacitance(double width_um, double height_um, double thickness_um,
                            double separation_um, double eps_rel,
                            const CouplingCoefficients& c) {
    require_positive(width_um, "width");
    require_positive(height_um, "height");
    require_positive(thickness_um, "thickness");
    require_positive(separation_um, "separation");
    require_positive(eps_rel, "eps_rel");
    const double wh = width_um / height_um;
    const double th = thickness_um / height_um;
    const double dh = separation_um / height_um;
    const double eps = eps_rel * kEpsilon0;
    return eps * (c.a1 * wh + c.a2 * std::pow(th, c.e1) + c.a3 * std::pow(th, c.e2)) *
           std::pow(dh, c.e_spacing);
}

std::optional<PairParameters> LineElectricals::pair(std::size_t i, std::size_t j) const {
    auto it = pairs.find({std::min(i, j), std::max(i, j)});
    if (it == pairs.end()) return std::nullopt;
    return it->second;
}

double LineElectricals::coupling_coefficient(std::size_t i, std::size_t j) const {
    const auto p = pair(i, j);
    if (!p) return 0.0;
    return p->m_total / std::sqrt(lines.at(i).l_total * lines.at(j).l_total);
}

void LineElectricals::validate() const {
    auto check = [](double v, const std::string& what) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw ValidationError(fmt::format("{} must be finite and > 0 (got {})", what, v));
        }
    };
    for (const auto& line : lines) {
        check(line.r_total, line.name + ".r_total");
        check(line.l_total, line.name + ".l_total");
        check(line.c_total, line.name + ".c_total");
    }
    for (const auto& [key, p] : pairs) {
        const auto label = lines.at(key.first).name + "/" + lines.at(key.second).name;
        check(p.m_total, label + ".m_total");
        // Non-neighbouring pairs carry no coupling capacitance.
        if (key.second == key.first + 1) check(p.cm_total, label + ".cm_total");
        const double k = coupling_coefficient(key.first, key.second);
        if (!(k < 1.0)) {
            throw ValidationError(
                fmt::format("coupling coefficient k = {:.6g} >= 1 for pair {}", k, label));
        }
    }
}

LineElectricals extract_all(std::span<const InterconnectGeometry> geometries,
                            std::span<const PairSeparation> separations,
                            const ExtractOptions& options,
                            std::span<const std::string> names) {
    if (!names.empty() && names.size() != geometries.size()) {
        throw ValidationError("line name count does not match geometry count");
    }
    const auto& ov = options.overrides;
    LineElectricals out;
    for (std::size_t i = 0; i < geometries.size(); ++i) {
        const auto& g = geometries[i];
        g.validate();
        LineParameters p;
        p.name = names.empty() ? fmt::format("line{}", i) : names[i];
        p.r_total = ov.r_total.value_or(line_resistance(g.sheet_res_ohm_sq, g.length_um, g.width_um));
        p.l_total = ov.l_total.value_or(self_inductance(g.length_um, g.width_um, g.thickness_um, g.lambda));
        p.c_total = ov.c_total.value_or(line_capacitance(g.width_um, g.height_um, g.thickness_um, g.eps_rel));
        out.lines.push_back(std::move(p));
    }

    for (const auto& s : separations) {
        if (s.first >= geometries.size() || s.second >= geometries.size() || s.first == s.second) {
            throw ValidationError(fmt::format("invalid line pair ({}, {})", s.first, s.second));
        }
        const std::size_t lo = std::min(s.first, s.second);
        const std::size_t hi = std::max(s.first, s.second);
        const auto& g = geometries[lo];
        PairParameters p;
        const double m = options.mutual == MutualConvention::bracket_only
                             ? mutual_inductance_bracket(g.length_um, s.separation_um)
                             : mutual_inductance(g.length_um, s.separation_um);
        p.m_total = ov.m_total.value_or(m);
        if (hi == lo + 1) {
            p.cm_total = ov.cm_total.value_or(coupling_capacitance(
                g.width_um, g.height_um, g.thickness_um, s.separation_um, g.eps_rel, *options.coeffs));
        }
        out.pairs[{lo, hi}] = p;
    }

    for (std::size_t i = 0; i + 1 < geometries.size(); ++i) {
        if (!out.pairs.contains({i, i + 1})) {
            throw ValidationError(fmt::format("no separation given for neighbouring lines {} and {}",
                                              out.lines[i].name, out.lines[i + 1].name));
        }
    }

    out.validate();
    return out;
}

}  // namespace xtalk

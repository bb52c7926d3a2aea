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

#include "xtalk/config.hpp"

#include "xtalk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <set>
#include <sstream>

namespace xtalk {

using nlohmann::json;

std::string ToolkitConfig::scenario_name() const {
    if (preset) return *preset;
    if (explicit_scenario) return explicit_scenario->name;
    return "custom";
}

namespace {

int line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return fmt::format("{:016x}", h);
}

void apply_assignment(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(fmt::format("--set expects key=value (got '{}')", assignment));
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    json* node = &doc;
    std::stringstream path(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(path, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].empty()) throw ConfigError(fmt::format("empty path component in '{}'", key));
        if (!node->is_object()) throw ConfigError(fmt::format("'{}' does not name an object", key));
        if (i + 1 == parts.size()) {
            (*node)[parts[i]] = value;
        } else {
            node = &(*node)[parts[i]];
            if (node->is_null()) *node = json::object();
        }
    }
}

// Typed access with path-qualified errors.
class Block {
public:
    Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(fmt::format("'{}' must be an object", path_));
    }

    void allow(std::initializer_list<std::string_view> keys) const {
        const std::set<std::string_view> ok(keys);
        for (const auto& [k, v] : j_.items()) {
            if (!ok.contains(k)) throw ConfigError(fmt::format("unknown key '{}.{}'", path_, k));
        }
    }

    bool has(const char* key) const { return j_.contains(key); }
    std::string at(const char* key) const { return path_ + "." + key; }

    std::optional<double> number(const char* key) const {
        if (!j_.contains(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(fmt::format("'{}' must be a number", at(key)));
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(fmt::format("'{}' must be finite", at(key)));
        return d;
    }

    void number(const char* key, double& out) const {
        if (auto v = number(key)) out = *v;
    }

    std::optional<int> integer(const char* key) const {
        if (!j_.contains(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(fmt::format("'{}' must be an integer", at(key)));
        return v.get<int>();
    }

    std::optional<std::string> string(const char* key) const {
        if (!j_.contains(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(fmt::format("'{}' must be a string", at(key)));
        return v.get<std::string>();
    }

    std::optional<bool> boolean(const char* key) const {
        if (!j_.contains(key)) return std::nullopt;
        const auto& v = j_.at(key);
        if (!v.is_boolean()) throw ConfigError(fmt::format("'{}' must be true or false", at(key)));
        return v.get<bool>();
    }

    const json& raw(const char* key) const { return j_.at(key); }
    Block child(const char* key) const { return Block(j_.at(key), at(key)); }

private:
    const json& j_;
    std::string path_;
};

LineRole role_from_string(const std::string& s, const std::string& where) {
    if (s == "aggressor") return LineRole::aggressor;
    if (s == "victim") return LineRole::victim;
    if (s == "shield") return LineRole::shield;
    throw ConfigError(fmt::format("'{}' must be aggressor, victim or shield (got '{}')", where, s));
}

template <typename F>
auto rethrow_as_config(F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

void read_geometry(const Block& b, ToolkitConfig& c) {
    b.allow({"length_um", "width_um", "thickness_um", "height_um", "separation_um", "shield_separation_um",
             "eps_rel", "sheet_res_ohm_sq", "lambda"});
    auto& g = c.geometry;
    b.number("length_um", g.length_um);
    b.number("width_um", g.width_um);
    b.number("thickness_um", g.thickness_um);
    b.number("height_um", g.height_um);
    b.number("separation_um", g.separation_um);
    b.number("shield_separation_um", c.shield_separation_um);
    b.number("eps_rel", g.eps_rel);
    b.number("sheet_res_ohm_sq", g.sheet_res_ohm_sq);
    b.number("lambda", g.lambda);
    rethrow_as_config([&] {
        g.validate();
        if (!(c.shield_separation_um > 0.0)) throw DomainError("shield_separation_um must be positive");
        return 0;
    });
}

void read_electricals(const Block& b, ToolkitConfig& c) {
    b.allow({"source", "coefficients", "mutual"});
    if (auto s = b.string("source")) {
        if (*s == "table") c.source = ElectricalsSource::table;
        else if (*s == "extract") c.source = ElectricalsSource::extract;
        else throw ConfigError(fmt::format("'{}' must be table or extract", b.at("source")));
    }
    if (auto s = b.string("coefficients")) {
        rethrow_as_config([&] { return &CouplingCoefficients::by_name(*s); });
        c.coefficients = *s;
    }
    if (auto s = b.string("mutual")) {
        if (*s == "bracket-only") c.mutual = MutualConvention::bracket_only;
        else if (*s == "full") c.mutual = MutualConvention::full;
        else throw ConfigError(fmt::format("'{}' must be bracket-only or full", b.at("mutual")));
    }
}

void read_overrides(const Block& b, ParameterOverrides& o) {
    b.allow({"r_total", "l_total", "c_total", "m_signal", "cm_signal", "m_shield", "cm_shield"});
    o.r_total = b.number("r_total");
    o.l_total = b.number("l_total");
    o.c_total = b.number("c_total");
    o.m_signal = b.number("m_signal");
    o.cm_signal = b.number("cm_signal");
    o.m_shield = b.number("m_shield");
    o.cm_shield = b.number("cm_shield");
}

void read_termination(const Block& b, TerminationSpec& t) {
    b.allow({"driver_resistance_ohm", "load_capacitance_ff"});
    b.number("driver_resistance_ohm", t.driver_resistance_ohm);
    if (auto v = b.number("load_capacitance_ff")) t.load_capacitance_f = *v * 1e-15;
    if (t.driver_resistance_ohm < 0.0 || t.load_capacitance_f < 0.0) {
        throw ConfigError("termination values must be >= 0");
    }
}

void read_scenario(const Block& b, ToolkitConfig& c) {
    b.allow({"preset", "name", "lines", "couplings"});
    const bool has_preset = b.has("preset");
    const bool has_lines = b.has("lines");
    if (has_preset == has_lines) {
        throw ConfigError("'scenario' needs exactly one of 'preset' or 'lines'");
    }
    if (has_preset) {
        const auto name = *b.string("preset");
        rethrow_as_config([&] { return preset_from_string(name); });
        c.preset = name;
        return;
    }
    ExplicitScenario s;
    if (auto n = b.string("name")) s.name = *n;
    const auto& lines = b.raw("lines");
    if (!lines.is_array() || lines.empty()) throw ConfigError("'scenario.lines' must be a non-empty array");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const Block l(lines[i], fmt::format("scenario.lines[{}]", i));
        l.allow({"name", "role", "r_total", "l_total", "c_total"});
        ExplicitLine line;
        line.name = l.string("name").value_or(fmt::format("line{}", i));
        line.role = role_from_string(l.string("role").value_or("victim"), l.at("role"));
        l.number("r_total", line.r_total);
        l.number("l_total", line.l_total);
        l.number("c_total", line.c_total);
        s.lines.push_back(std::move(line));
    }
    if (b.has("couplings")) {
        const auto& cs = b.raw("couplings");
        if (!cs.is_array()) throw ConfigError("'scenario.couplings' must be an array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const Block cb(cs[i], fmt::format("scenario.couplings[{}]", i));
            cb.allow({"first", "second", "m_total", "cm_total"});
            ExplicitCoupling cp;
            cp.first = cb.string("first").value_or("");
            cp.second = cb.string("second").value_or("");
            cb.number("m_total", cp.m_total);
            cb.number("cm_total", cp.cm_total);
            s.couplings.push_back(std::move(cp));
        }
    }
    c.explicit_scenario = std::move(s);
}

void read_shield(const Block& b, ShieldConfig& s) {
    b.allow({"tap_count", "taps", "tie_resistance_ohm", "width_scale"});
    s.tap_count = b.integer("tap_count");
    if (b.has("taps")) {
        const auto& t = b.raw("taps");
        if (!t.is_array()) throw ConfigError("'shield.taps' must be an array of fractions");
        std::vector<double> taps;
        for (const auto& v : t) {
            if (!v.is_number()) throw ConfigError("'shield.taps' must be an array of fractions");
            taps.push_back(v.get<double>());
        }
        s.taps = std::move(taps);
    }
    if (s.tap_count && s.taps) throw ConfigError("'shield' takes either 'tap_count' or 'taps', not both");
    if (s.tap_count && *s.tap_count < 0) throw ConfigError("'shield.tap_count' must be >= 0");
    b.number("tie_resistance_ohm", s.tie_resistance_ohm);
    b.number("width_scale", s.width_scale);
    if (!(s.width_scale > 0.0)) throw ConfigError("'shield.width_scale' must be > 0");
    if (s.tie_resistance_ohm < 0.0) throw ConfigError("'shield.tie_resistance_ohm' must be >= 0");
}

void read_stimulus(const Block& b, Stimulus& s) {
    b.allow({"kind", "amplitude_v", "rise_time_ns", "delay_ns", "points_ns"});
    if (auto k = b.string("kind")) s.kind = rethrow_as_config([&] { return stimulus_kind_from_string(*k); });
    b.number("amplitude_v", s.amplitude_v);
    if (auto v = b.number("rise_time_ns")) s.rise_time_s = *v * compat::kTime;
    if (auto v = b.number("delay_ns")) s.delay_s = *v * compat::kTime;
    if (b.has("points_ns")) {
        const auto& pts = b.raw("points_ns");
        if (!pts.is_array()) throw ConfigError("'stimulus.points_ns' must be an array of [t, v] pairs");
        for (const auto& p : pts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw ConfigError("'stimulus.points_ns' must be an array of [t, v] pairs");
            }
            s.points.emplace_back(p[0].get<double>() * compat::kTime, p[1].get<double>());
        }
    }
    rethrow_as_config([&] {
        s.validate();
        return 0;
    });
}

void read_sim(const Block& b, ToolkitConfig& c) {
    b.allow({"dt_ns", "t_end_ns", "n_segments", "method", "output_nodes"});
    if (auto v = b.number("dt_ns")) c.sim.dt = *v * compat::kTime;
    if (auto v = b.number("t_end_ns")) c.sim.t_end = *v * compat::kTime;
    if (auto v = b.integer("n_segments")) c.n_segments = *v;
    if (auto m = b.string("method")) c.sim.method = rethrow_as_config([&] { return method_from_string(*m); });
    if (b.has("output_nodes")) {
        const auto& o = b.raw("output_nodes");
        if (o.is_string() && o.get<std::string>() == "all") {
            c.sim.output_nodes.clear();
        } else if (o.is_array()) {
            for (const auto& v : o) {
                if (!v.is_string()) throw ConfigError("'sim.output_nodes' must be \"all\" or an array of names");
                c.sim.output_nodes.push_back(v.get<std::string>());
            }
        } else {
            throw ConfigError("'sim.output_nodes' must be \"all\" or an array of names");
        }
    }
    if (c.n_segments < 1) throw ConfigError("'sim.n_segments' must be >= 1");
    rethrow_as_config([&] {
        c.sim.validate();
        return 0;
    });
}

void read_output(const Block& b, OutputConfig& o) {
    b.allow({"directory", "formats"});
    if (auto d = b.string("directory")) o.directory = *d;
    if (b.has("formats")) {
        const auto& f = b.raw("formats");
        if (!f.is_array()) throw ConfigError("'output.formats' must be an array");
        o.csv = o.json = false;
        for (const auto& v : f) {
            const auto s = v.is_string() ? v.get<std::string>() : std::string();
            if (s == "csv") o.csv = true;
            else if (s == "json") o.json = true;
            else throw ConfigError("'output.formats' entries must be csv or json");
        }
    }
}

}  // namespace

std::string default_document(std::string_view preset) {
    json doc = {
        {"geometry",
         {{"length_um", 5000.0},
          {"width_um", 2.0},
          {"thickness_um", 2.0},
          {"height_um", 2.0},
          {"separation_um", 1.0},
          {"shield_separation_um", 2.0},
          {"eps_rel", 3.9},
          {"sheet_res_ohm_sq", 0.05},
          {"lambda", 1.0}}},
        {"electricals", {{"source", "table"}, {"coefficients", "table-compat"}, {"mutual", "bracket-only"}}},
        {"overrides", {{"r_total", 500.0}}},
        {"termination", {{"driver_resistance_ohm", 82.76}, {"load_capacitance_ff", 76.0}}},
        {"scenario", {{"preset", std::string(preset)}}},
        {"shield", {{"tie_resistance_ohm", 0.0}, {"width_scale", 1.0}}},
        {"stimulus", {{"kind", "ramp"}, {"amplitude_v", 1.0}, {"rise_time_ns", 1.0}, {"delay_ns", 0.0}}},
        {"sim", {{"dt_ns", 0.05}, {"t_end_ns", 500.0}, {"n_segments", 12}, {"method", "trapezoidal"}}},
        {"output", {{"directory", "out"}, {"formats", {"csv", "json"}}}},
    };
    return doc.dump(2);
}

ToolkitConfig default_config(std::string_view preset, std::span<const std::string> assignments) {
    return parse_config(default_document(preset), assignments);
}

ToolkitConfig parse_config(std::string_view text, std::span<const std::string> assignments) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("syntax error: {}", e.what()), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object", 1);
    for (const auto& a : assignments) apply_assignment(doc, a);

    const Block root(doc, "config");
    root.allow({"geometry", "electricals", "overrides", "termination", "scenario", "shield", "stimulus", "sim",
                "output"});
    if (!root.has("geometry")) throw ConfigError("missing 'geometry' block");
    if (!root.has("scenario")) throw ConfigError("missing 'scenario' block");

    ToolkitConfig c;
    read_geometry(root.child("geometry"), c);
    if (root.has("electricals")) read_electricals(root.child("electricals"), c);
    if (root.has("overrides")) read_overrides(root.child("overrides"), c.overrides);
    if (root.has("termination")) read_termination(root.child("termination"), c.termination);
    read_scenario(root.child("scenario"), c);
    if (root.has("shield")) read_shield(root.child("shield"), c.shield);
    if (root.has("stimulus")) read_stimulus(root.child("stimulus"), c.stimulus);
    if (root.has("sim")) read_sim(root.child("sim"), c);
    if (root.has("output")) read_output(root.child("output"), c.output);
    c.hash = fnv1a_hex(doc.dump());
    return c;
}

ToolkitConfig load_config(const std::string& path, std::span<const std::string> assignments) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open config '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), assignments);
}

PresetParams resolve_params(const ToolkitConfig& c) {
    PresetParams p;
    if (c.source == ElectricalsSource::extract) {
        ExtractOptions opt;
        opt.coeffs = &CouplingCoefficients::by_name(c.coefficients);
        opt.mutual = c.mutual;
        p = params_from_geometry(c.geometry, c.shield_separation_um, opt);
    }
    const auto& o = c.overrides;
    if (o.r_total) p.r_line = *o.r_total;
    if (o.l_total) p.l_line = *o.l_total * compat::kInductance;
    if (o.c_total) p.c_line = *o.c_total * compat::kPicofarad;
    if (o.m_signal) p.m_signal = *o.m_signal * compat::kInductance;
    if (o.cm_signal) p.cm_signal = *o.cm_signal * compat::kPicofarad;
    if (o.m_shield) p.m_shield = *o.m_shield * compat::kInductance;
    if (o.cm_shield) p.cm_shield = *o.cm_shield * compat::kPicofarad;

    p.termination = c.termination;
    p.n_segments = c.n_segments;
    p.tie_resistance_ohm = c.shield.tie_resistance_ohm;
    if (c.shield.width_scale != 1.0) apply_shield_width(p, c.geometry, c.shield.width_scale);
    if (c.shield.tap_count) p.taps = TapSchedule::uniform(*c.shield.tap_count);
    if (c.shield.taps) p.taps = TapSchedule{*c.shield.taps, 0.0};
    return p;
}

CoupledNetwork build_network(const ToolkitConfig& c) {
    if (c.preset) {
        const bool has_taps = (c.shield.tap_count && *c.shield.tap_count > 0) ||
                              (c.shield.taps && !c.shield.taps->empty());
        if (has_taps && preset_from_string(*c.preset) == Preset::no_shield) {
            throw ConfigError("shield taps require a shield preset (scenario is no-shield)");
        }
        return scenario_preset(*c.preset, resolve_params(c));
    }

    const auto& s = *c.explicit_scenario;
    std::vector<LineSpec> lines;
    for (const auto& l : s.lines) {
        lines.push_back({l.name, l.role, l.r_total, l.l_total * compat::kInductance, l.c_total * compat::kPicofarad});
    }
    auto index_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (lines[i].name == name) return i;
        }
        throw ConfigError(fmt::format("coupling references unknown line '{}'", name));
    };
    std::vector<LineCoupling> couplings;
    for (const auto& cp : s.couplings) {
        couplings.push_back({index_of(cp.first), index_of(cp.second), cp.m_total * compat::kInductance,
                             cp.cm_total * compat::kPicofarad});
    }
    std::optional<TapSchedule> taps;
    if (c.shield.taps) taps = TapSchedule{*c.shield.taps, c.shield.tie_resistance_ohm};
    else if (c.shield.tap_count) taps = TapSchedule::uniform(*c.shield.tap_count, c.shield.tie_resistance_ohm);
    else taps = TapSchedule{{}, c.shield.tie_resistance_ohm};
    return build_ladder(lines, couplings, c.termination, taps, c.n_segments, s.name);
}

}  // namespace xtalk

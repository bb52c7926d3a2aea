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

#include "xtalk/engine.hpp"

#include "xtalk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace xtalk {

// Used when a step has to be written out as a piecewise-linear edge.
constexpr double kStepEdge = 1e-15;

double Stimulus::value(double t) const {
    switch (kind) {
    case Kind::step: return t > delay_s ? amplitude_v : 0.0;
    case Kind::ramp:
        if (t <= delay_s) return 0.0;
        if (rise_time_s <= 0.0 || t >= delay_s + rise_time_s) return amplitude_v;
        return amplitude_v * (t - delay_s) / rise_time_s;
    case Kind::pwl: {
        if (points.empty()) return 0.0;
        if (t <= points.front().first) return points.front().second;
        if (t >= points.back().first) return points.back().second;
        auto it = std::upper_bound(points.begin(), points.end(), t,
                                   [](double tv, const auto& p) { return tv < p.first; });
        const auto& [t1, v1] = *it;
        const auto& [t0, v0] = *(it - 1);
        if (t1 == t0) return v1;
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
    }
    return 0.0;
}

std::vector<std::pair<double, double>> Stimulus::breakpoints() const {
    std::vector<std::pair<double, double>> out;
    switch (kind) {
    case Kind::step:
    case Kind::ramp: {
        const double edge = (kind == Kind::step || rise_time_s <= 0.0) ? kStepEdge : rise_time_s;
        out.emplace_back(0.0, 0.0);
        if (delay_s > 0.0) out.emplace_back(delay_s, 0.0);
        out.emplace_back(delay_s + edge, amplitude_v);
        break;
    }
    case Kind::pwl:
        if (points.empty() || points.front().first > 0.0) out.emplace_back(0.0, value(0.0));
        out.insert(out.end(), points.begin(), points.end());
        break;
    }
    return out;
}

void Stimulus::validate() const {
    if (!std::isfinite(amplitude_v)) throw ValidationError("stimulus amplitude must be finite");
    if (!(rise_time_s >= 0.0) || !std::isfinite(rise_time_s)) {
        throw ValidationError("stimulus rise time must be >= 0");
    }
    if (!(delay_s >= 0.0) || !std::isfinite(delay_s)) throw ValidationError("stimulus delay must be >= 0");
    if (kind == Kind::pwl) {
        if (points.empty()) throw ValidationError("piecewise-linear stimulus needs at least one point");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second) || points[i].first < 0.0) {
                throw ValidationError(fmt::format("invalid piecewise-linear point {}", i));
            }
            if (i > 0 && points[i].first < points[i - 1].first) {
                throw ValidationError("piecewise-linear points must be sorted by time");
            }
        }
    }
}

std::string_view to_string(Stimulus::Kind kind) {
    switch (kind) {
    case Stimulus::Kind::step: return "step";
    case Stimulus::Kind::ramp: return "ramp";
    case Stimulus::Kind::pwl: return "pwl";
    }
    return "?";
}

Stimulus::Kind stimulus_kind_from_string(std::string_view name) {
    if (name == "step") return Stimulus::Kind::step;
    if (name == "ramp") return Stimulus::Kind::ramp;
    if (name == "pwl" || name == "piecewise-linear") return Stimulus::Kind::pwl;
    throw ValidationError(fmt::format("unknown stimulus kind '{}'", name));
}

std::string_view to_string(Method method) {
    return method == Method::trapezoidal ? "trapezoidal" : "backward-euler";
}

Method method_from_string(std::string_view name) {
    if (name == "trapezoidal") return Method::trapezoidal;
    if (name == "backward-euler") return Method::backward_euler;
    throw ValidationError(fmt::format("unknown integration method '{}'", name));
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t_end) || !(dt < t_end)) {
        throw ValidationError(fmt::format("need 0 < dt < t_end (dt = {}, t_end = {})", dt, t_end));
    }
}

std::size_t SimConfig::steps() const {
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * ratio) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(ratio));
}

const Trace* WaveformSet::find(std::string_view label) const {
    for (const auto& t : traces) {
        if (t.label == label) return &t;
    }
    return nullptr;
}

const Trace& WaveformSet::at(std::string_view label) const {
    if (const auto* t = find(label)) return *t;
    throw ValidationError(fmt::format("waveform set has no trace '{}'", label));
}

}  // namespace xtalk

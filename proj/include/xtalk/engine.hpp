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

// Modified nodal analysis and fixed-step transient integration.
//
// Unknowns are non-ground node voltages, inductor branch currents, and the
// currents of ideal (0 ohm) sources and ground ties. The system is
//     G x + C dx/dt = b(t)
// with inductor rows written as  v_b - v_a + R i + L di/dt + sum M di_k/dt = 0.
// A resistor feeding an inductor through an otherwise unconnected node is
// folded into the inductor branch (the node voltage is recovered afterwards).

#include "xtalk/linalg/dense_lu.hpp"
#include "xtalk/netbuild.hpp"
#include "xtalk/simd/kernels.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xtalk {

struct Stimulus {
    enum class Kind { step, ramp, pwl };

    Kind kind = Kind::ramp;
    double amplitude_v = 1.0;
    double rise_time_s = 1e-9;
    double delay_s = 0.0;
    std::vector<std::pair<double, double>> points;  // (time, volts), pwl only

    double value(double t) const;
    // Breakpoints describing the same waveform, starting at t = 0.
    std::vector<std::pair<double, double>> breakpoints() const;
    // Throws ValidationError.
    void validate() const;
};

std::string_view to_string(Stimulus::Kind kind);
Stimulus::Kind stimulus_kind_from_string(std::string_view name);

enum class Method { trapezoidal, backward_euler };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

struct SimConfig {
    double dt = 0.05e-9;
    double t_end = 500e-9;
    Method method = Method::trapezoidal;
    std::vector<std::string> output_nodes;  // empty: everything

    void validate() const;
    std::size_t steps() const;
};

enum class TraceKind { node, source, branch };

struct Trace {
    std::string label;
    TraceKind kind = TraceKind::node;
    std::vector<double> values;
};

class WaveformSet {
public:
    std::string scenario;
    std::string config_hash;
    std::vector<double> time;
    std::vector<Trace> traces;

    std::size_t samples() const { return time.size(); }
    const Trace* find(std::string_view label) const;
    // Throws ValidationError for unknown labels.
    const Trace& at(std::string_view label) const;
};

struct MnaSystem {
    struct SourceStamp {
        std::size_t row;
        double scale;  // b[row] += value * scale
    };

    // v(node) = v(from) + sign * ohms * i(branch)
    struct FoldedNode {
        NodeId node;
        NodeId from;
        std::size_t branch;
        double ohms;
        double sign;
    };

    std::size_t node_unknowns = 0;
    std::size_t branch_unknowns = 0;
    std::size_t source_unknowns = 0;

    linalg::DenseMatrix g;
    linalg::DenseMatrix c;
    std::vector<std::string> labels;

    std::vector<long> node_index;          // NodeId -> unknown, -1 for ground / folded
    std::vector<std::size_t> branch_index;  // inductor -> unknown
    std::vector<FoldedNode> folded;
    std::vector<SourceStamp> sources;      // parallel to CoupledNetwork::sources

    std::size_t size() const { return node_unknowns + branch_unknowns + source_unknowns; }

    // b = sum over sources of value * stamp
    void rhs(std::span<const double> source_values, std::span<double> b) const;
    // Voltages indexed by NodeId, ground included.
    std::vector<double> node_voltages(std::span<const double> x) const;
};

// Throws ValidationError for invalid networks, AssemblyError for structurally
// singular systems.
MnaSystem assemble(const CoupledNetwork& network);

// Inductors shorted, capacitors open. Throws SolverError naming the floating
// subnetwork when the resistive network is singular.
std::vector<double> dc_operating_point(const CoupledNetwork& network, std::span<const double> source_values);
// Driven sources at `driven_value`, quiet sources at 0.
std::vector<double> dc_operating_point(const CoupledNetwork& network, double driven_value);

WaveformSet run_transient(const CoupledNetwork& network, const Stimulus& stimulus, const SimConfig& config,
                          const simd::KernelTable& kernels = simd::active());

std::string branch_label(const Inductor& inductor);

}  // namespace xtalk

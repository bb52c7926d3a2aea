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

// Distributed coupled RLC ladders.
//
// Each line is an L-section ladder: driver node -> n x (R/n, L/n) -> load
// node, with C/n shunted at every downstream node. Neighbouring lines share
// Cm/n between aligned downstream nodes; any declared pair shares M/n between
// aligned segment inductors. Element values are SI.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xtalk {

using NodeId = std::uint32_t;
inline constexpr NodeId kGround = 0;

enum class LineRole { aggressor, victim, shield };

std::string_view to_string(LineRole role);

struct LineSpec {
    std::string name;
    LineRole role = LineRole::victim;
    double r_total = 0.0;
    double l_total = 0.0;
    double c_total = 0.0;
};

// Indices refer to the LineSpec list, which is in physical order.
struct LineCoupling {
    std::size_t first = 0;
    std::size_t second = 0;
    double m_total = 0.0;
    double cm_total = 0.0;
};

struct TerminationSpec {
    double driver_resistance_ohm = 82.76;
    double load_capacitance_f = 76e-15;
};

struct TapSchedule {
    std::vector<double> fractions;  // strictly increasing, inside (0, 1)
    double tie_resistance_ohm = 0.0;

    // count interior taps at i / (count + 1).
    static TapSchedule uniform(int count, double tie_resistance_ohm = 0.0);
};

enum class NodeKind { ground, ladder, internal };

struct NodeInfo {
    std::string label;
    NodeKind kind = NodeKind::ladder;
    std::size_t line = 0;
    int segment = 0;  // ladder position 0..n; internal nodes carry their segment
};

struct Resistor {
    std::string name;
    NodeId a = kGround;
    NodeId b = kGround;
    double ohms = 0.0;
};

struct Capacitor {
    std::string name;
    NodeId a = kGround;
    NodeId b = kGround;
    double farads = 0.0;
};

// Current flows a -> b; the index into CoupledNetwork::inductors is the branch id.
struct Inductor {
    std::string name;
    NodeId a = kGround;
    NodeId b = kGround;
    double henries = 0.0;
    std::size_t line = 0;
    int segment = 0;
};

struct MutualCoupling {
    std::string name;
    std::size_t first_branch = 0;
    std::size_t second_branch = 0;
    double henries = 0.0;
};

// A voltage source in series with a driver resistance, feeding `node`.
// Quiet sources hold 0 V; driven ones follow the stimulus.
struct Source {
    std::string name;
    std::string label;  // waveform label of the ideal source terminal
    NodeId node = kGround;
    double series_ohm = 0.0;
    bool driven = false;
    std::size_t line = 0;
};

// Connection of a node to ground; 0 ohm is an ideal short.
struct GroundTie {
    std::string name;
    NodeId node = kGround;
    double ohms = 0.0;
};

struct LineInfo {
    std::string name;
    LineRole role = LineRole::victim;
    std::vector<NodeId> ladder;  // n + 1 nodes, driver end first
};

class CoupledNetwork {
public:
    std::string scenario;
    int n_segments = 0;

    std::vector<NodeInfo> nodes;  // nodes[0] is ground
    std::vector<LineInfo> lines;

    std::vector<Resistor> resistors;
    std::vector<Capacitor> capacitors;
    std::vector<Inductor> inductors;
    std::vector<MutualCoupling> mutuals;
    std::vector<Source> sources;
    std::vector<GroundTie> ties;

    std::size_t node_count() const { return nodes.size(); }
    std::optional<NodeId> find_node(std::string_view label) const;
    std::optional<std::size_t> find_line(std::string_view name) const;
    NodeId load_node(std::size_t line) const { return lines.at(line).ladder.back(); }
    NodeId driver_node(std::size_t line) const { return lines.at(line).ladder.front(); }
};

// Throws PlacementError, CouplingError, ValidationError.
CoupledNetwork build_ladder(std::span<const LineSpec> lines,
                            std::span<const LineCoupling> couplings,
                            const TerminationSpec& termination,
                            const std::optional<TapSchedule>& taps,
                            int n_segments,
                            std::string scenario = "custom");

enum class FindingKind { reference, spd, connectivity, value };

struct Finding {
    FindingKind kind;
    std::string element;  // element or node name
    std::string message;
};

// Empty iff every network invariant holds.
std::vector<Finding> validate_network(const CoupledNetwork& network);

}  // namespace xtalk

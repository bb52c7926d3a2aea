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

#include <cmath>
#include <fmt/format.h>

namespace xtalk {

std::string branch_label(const Inductor& inductor) { return "I(" + inductor.name + ")"; }

namespace {

struct Incidence {
    int resistors = 0;
    int inductors = 0;
    int others = 0;
    std::size_t resistor = 0;
    std::size_t inductor = 0;
};

std::vector<Incidence> incidence(const CoupledNetwork& net) {
    std::vector<Incidence> inc(net.node_count());
    for (std::size_t i = 0; i < net.resistors.size(); ++i) {
        for (NodeId n : {net.resistors[i].a, net.resistors[i].b}) {
            ++inc[n].resistors;
            inc[n].resistor = i;
        }
    }
    for (std::size_t i = 0; i < net.inductors.size(); ++i) {
        for (NodeId n : {net.inductors[i].a, net.inductors[i].b}) {
            ++inc[n].inductors;
            inc[n].inductor = i;
        }
    }
    for (const auto& c : net.capacitors) {
        ++inc[c.a].others;
        ++inc[c.b].others;
    }
    for (const auto& s : net.sources) ++inc[s.node].others;
    for (const auto& t : net.ties) ++inc[t.node].others;
    return inc;
}

void stamp_conductance(linalg::DenseMatrix& m, long a, long b, double g) {
    if (a >= 0) m(a, a) += g;
    if (b >= 0) m(b, b) += g;
    if (a >= 0 && b >= 0) {
        m(a, b) -= g;
        m(b, a) -= g;
    }
}

}  // namespace

MnaSystem assemble(const CoupledNetwork& net) {
    // Floating nodes are left to the DC solve, which names them.
    for (const auto& f : validate_network(net)) {
        if (f.kind == FindingKind::connectivity) continue;
        throw ValidationError(fmt::format("invalid network: {}: {}", f.element, f.message));
    }

    MnaSystem sys;
    const std::size_t nn = net.node_count();
    const auto inc = incidence(net);

    // Fold R -> node -> L chains into one branch.
    struct BranchEnds {
        NodeId p;
        NodeId q;
        double series = 0.0;
    };
    std::vector<BranchEnds> ends(net.inductors.size());
    for (std::size_t i = 0; i < net.inductors.size(); ++i) ends[i] = {net.inductors[i].a, net.inductors[i].b, 0.0};
    std::vector<bool> folded_node(nn, false);
    std::vector<bool> folded_resistor(net.resistors.size(), false);
    for (NodeId n = 1; n < nn; ++n) {
        const auto& in = inc[n];
        if (in.resistors != 1 || in.inductors != 1 || in.others != 0) continue;
        const auto& r = net.resistors[in.resistor];
        const auto& l = net.inductors[in.inductor];
        auto& e = ends[in.inductor];
        if (e.series != 0.0 || r.a == r.b || l.a == l.b) continue;
        const NodeId other = r.a == n ? r.b : r.a;
        if (l.a == n && e.p == n) {
            // other -R-> n -L-> q ; v(n) = v(other) - R i
            e.p = other;
            sys.folded.push_back({n, other, in.inductor, r.ohms, -1.0});
        } else if (l.b == n && e.q == n) {
            // p -L-> n -R-> other ; v(n) = v(other) + R i
            e.q = other;
            sys.folded.push_back({n, other, in.inductor, r.ohms, +1.0});
        } else {
            continue;
        }
        e.series = r.ohms;
        folded_node[n] = true;
        folded_resistor[in.resistor] = true;
    }

    sys.node_index.assign(nn, -1);
    for (NodeId n = 1; n < nn; ++n) {
        if (folded_node[n]) continue;
        sys.node_index[n] = static_cast<long>(sys.node_unknowns++);
        sys.labels.push_back(net.nodes[n].label);
    }
    sys.branch_unknowns = net.inductors.size();
    for (std::size_t i = 0; i < net.inductors.size(); ++i) {
        sys.branch_index.push_back(sys.node_unknowns + i);
        sys.labels.push_back(branch_label(net.inductors[i]));
    }
    std::size_t next = sys.node_unknowns + sys.branch_unknowns;
    std::vector<long> source_row(net.sources.size(), -1);
    for (std::size_t i = 0; i < net.sources.size(); ++i) {
        if (net.sources[i].series_ohm == 0.0) {
            source_row[i] = static_cast<long>(next++);
            sys.labels.push_back("I(" + net.sources[i].name + ")");
        }
    }
    std::vector<long> tie_row(net.ties.size(), -1);
    for (std::size_t i = 0; i < net.ties.size(); ++i) {
        if (net.ties[i].ohms == 0.0) {
            tie_row[i] = static_cast<long>(next++);
            sys.labels.push_back("I(" + net.ties[i].name + ")");
        }
    }
    sys.source_unknowns = next - sys.node_unknowns - sys.branch_unknowns;

    const std::size_t n = sys.size();
    sys.g = linalg::DenseMatrix(n, n);
    sys.c = linalg::DenseMatrix(n, n);
    auto idx = [&](NodeId node) { return sys.node_index[node]; };

    for (std::size_t i = 0; i < net.resistors.size(); ++i) {
        if (folded_resistor[i]) continue;
        const auto& r = net.resistors[i];
        stamp_conductance(sys.g, idx(r.a), idx(r.b), 1.0 / r.ohms);
    }
    for (const auto& c : net.capacitors) stamp_conductance(sys.c, idx(c.a), idx(c.b), c.farads);
    for (std::size_t i = 0; i < net.inductors.size(); ++i) {
        const std::size_t row = sys.branch_index[i];
        const long p = idx(ends[i].p);
        const long q = idx(ends[i].q);
        if (p >= 0) {
            sys.g(p, row) += 1.0;
            sys.g(row, p) -= 1.0;
        }
        if (q >= 0) {
            sys.g(q, row) -= 1.0;
            sys.g(row, q) += 1.0;
        }
        sys.g(row, row) += ends[i].series;
        sys.c(row, row) += net.inductors[i].henries;
    }
    for (const auto& m : net.mutuals) {
        const std::size_t a = sys.branch_index[m.first_branch];
        const std::size_t b = sys.branch_index[m.second_branch];
        sys.c(a, b) += m.henries;
        sys.c(b, a) += m.henries;
    }
    for (std::size_t i = 0; i < net.sources.size(); ++i) {
        const auto& s = net.sources[i];
        const long node = idx(s.node);
        if (node < 0) throw AssemblyError(fmt::format("source '{}' is connected to ground", s.name));
        if (source_row[i] >= 0) {
            const std::size_t row = static_cast<std::size_t>(source_row[i]);
            sys.g(node, row) += 1.0;
            sys.g(row, node) += 1.0;
            sys.sources.push_back({row, 1.0});
        } else {
            stamp_conductance(sys.g, node, -1, 1.0 / s.series_ohm);
            sys.sources.push_back({static_cast<std::size_t>(node), 1.0 / s.series_ohm});
        }
    }
    for (std::size_t i = 0; i < net.ties.size(); ++i) {
        const auto& t = net.ties[i];
        const long node = idx(t.node);
        if (node < 0) throw AssemblyError(fmt::format("tie '{}' is connected to ground", t.name));
        if (tie_row[i] >= 0) {
            const std::size_t row = static_cast<std::size_t>(tie_row[i]);
            sys.g(node, row) += 1.0;
            sys.g(row, node) += 1.0;
        } else {
            stamp_conductance(sys.g, node, -1, 1.0 / t.ohms);
        }
    }

    // Every unknown must appear in some equation, and every equation must
    // involve some unknown.
    for (std::size_t r = 0; r < n; ++r) {
        bool row_used = false;
        bool col_used = false;
        for (std::size_t k = 0; k < n; ++k) {
            row_used = row_used || sys.g(r, k) != 0.0 || sys.c(r, k) != 0.0;
            col_used = col_used || sys.g(k, r) != 0.0 || sys.c(k, r) != 0.0;
        }
        if (!row_used || !col_used) {
            throw AssemblyError(fmt::format("structurally singular system at '{}'", sys.labels[r]));
        }
    }
    return sys;
}

void MnaSystem::rhs(std::span<const double> source_values, std::span<double> b) const {
    std::fill(b.begin(), b.end(), 0.0);
    for (std::size_t i = 0; i < sources.size(); ++i) {
        b[sources[i].row] += source_values[i] * sources[i].scale;
    }
}

std::vector<double> MnaSystem::node_voltages(std::span<const double> x) const {
    std::vector<double> v(node_index.size(), 0.0);
    for (std::size_t n = 0; n < node_index.size(); ++n) {
        if (node_index[n] >= 0) v[n] = x[static_cast<std::size_t>(node_index[n])];
    }
    for (const auto& f : folded) {
        v[f.node] = v[f.from] + f.sign * f.ohms * x[branch_index[f.branch]];
    }
    return v;
}

std::vector<double> dc_operating_point(const CoupledNetwork& net, std::span<const double> source_values) {
    if (source_values.size() != net.sources.size()) {
        throw ValidationError(fmt::format("expected {} source values, got {}", net.sources.size(),
                                          source_values.size()));
    }
    for (const auto& f : validate_network(net)) {
        if (f.kind == FindingKind::connectivity) {
            throw SolverError("singular DC system: floating subnetwork " + f.message);
        }
    }
    const MnaSystem sys = assemble(net);
    std::vector<double> x(sys.size());
    sys.rhs(source_values, x);
    const linalg::LuFactorization lu(sys.g);
    lu.solve(x);
    return sys.node_voltages(x);
}

std::vector<double> dc_operating_point(const CoupledNetwork& net, double driven_value) {
    std::vector<double> values;
    values.reserve(net.sources.size());
    for (const auto& s : net.sources) values.push_back(s.driven ? driven_value : 0.0);
    return dc_operating_point(net, values);
}

}  // namespace xtalk

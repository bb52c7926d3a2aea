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

#include "xtalk/netbuild.hpp"

#include "xtalk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <set>

namespace xtalk {

std::string_view to_string(LineRole role) {
    switch (role) {
    case LineRole::aggressor: return "aggressor";
    case LineRole::victim: return "victim";
    case LineRole::shield: return "shield";
    }
    return "?";
}

TapSchedule TapSchedule::uniform(int count, double tie_resistance_ohm) {
    TapSchedule s;
    s.tie_resistance_ohm = tie_resistance_ohm;
    for (int i = 1; i <= count; ++i) {
        s.fractions.push_back(static_cast<double>(i) / static_cast<double>(count + 1));
    }
    return s;
}

std::optional<NodeId> CoupledNetwork::find_node(std::string_view label) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].label == label) return static_cast<NodeId>(i);
    }
    return std::nullopt;
}

std::optional<std::size_t> CoupledNetwork::find_line(std::string_view name) const {
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].name == name) return i;
    }
    return std::nullopt;
}

namespace {

constexpr double kTapTolerance = 1e-9;

bool lands_on_node(double fraction, int n) {
    const double pos = fraction * n;
    return std::abs(pos - std::round(pos)) <= kTapTolerance * std::max(1, n);
}

int suggest_segments(std::span<const double> fractions, int n) {
    for (int candidate = std::max(n, 1); candidate <= 64 * std::max(n, 1); ++candidate) {
        if (std::all_of(fractions.begin(), fractions.end(),
                        [&](double f) { return lands_on_node(f, candidate); })) {
            return candidate;
        }
    }
    return 0;
}

void check_taps(const TapSchedule& taps, int n) {
    double prev = 0.0;
    for (double f : taps.fractions) {
        if (!(f > 0.0 && f < 1.0)) {
            throw ValidationError(fmt::format("tap fraction {} outside (0, 1)", f));
        }
        if (!(f > prev)) {
            throw ValidationError("tap fractions must be strictly increasing");
        }
        prev = f;
    }
    if (!(taps.tie_resistance_ohm >= 0.0) || !std::isfinite(taps.tie_resistance_ohm)) {
        throw ValidationError("tap tie resistance must be >= 0");
    }
    for (double f : taps.fractions) {
        if (!lands_on_node(f, n)) {
            const int suggestion = suggest_segments(taps.fractions, n);
            throw PlacementError(
                fmt::format("tap at fraction {:.6g} does not fall on a node with n_segments = {}"
                            "; try n_segments = {}",
                            f, n, suggestion),
                suggestion);
        }
    }
}

// Cholesky on a small dense symmetric matrix; false if not positive definite.
bool is_positive_definite(std::vector<double> a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / ljj;
        }
    }
    return true;
}

void check_line_inductance(std::span<const LineSpec> lines, std::span<const LineCoupling> couplings) {
    const std::size_t n = lines.size();
    std::vector<double> mat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) mat[i * n + i] = lines[i].l_total;
    for (const auto& c : couplings) {
        mat[c.first * n + c.second] = c.m_total;
        mat[c.second * n + c.first] = c.m_total;
    }
    if (is_positive_definite(mat, n)) return;

    const LineCoupling* worst = nullptr;
    double worst_k = -1.0;
    for (const auto& c : couplings) {
        const double k = std::abs(c.m_total) / std::sqrt(lines[c.first].l_total * lines[c.second].l_total);
        if (k > worst_k) {
            worst_k = k;
            worst = &c;
        }
    }
    if (worst == nullptr) throw CouplingError("inductance matrix is not positive definite");
    throw CouplingError(fmt::format("inductance matrix is not positive definite; pair {}/{} has k = {:.6g}",
                                    lines[worst->first].name, lines[worst->second].name, worst_k));
}

void check_inputs(std::span<const LineSpec> lines, std::span<const LineCoupling> couplings,
                  const TerminationSpec& term, int n_segments) {
    if (n_segments < 1) throw ValidationError("n_segments must be >= 1");
    if (lines.empty()) throw ValidationError("at least one line is required");

    std::set<std::string> names;
    for (const auto& l : lines) {
        if (l.name.empty()) throw ValidationError("line name must not be empty");
        if (!names.insert(l.name).second) throw ValidationError("duplicate line name '" + l.name + "'");
        if (!(l.r_total >= 0.0) || !std::isfinite(l.r_total)) {
            throw ValidationError(l.name + ": r_total must be >= 0");
        }
        if (!(l.l_total > 0.0) || !std::isfinite(l.l_total)) {
            throw ValidationError(l.name + ": l_total must be > 0");
        }
        if (!(l.c_total > 0.0) || !std::isfinite(l.c_total)) {
            throw ValidationError(l.name + ": c_total must be > 0");
        }
    }
    if (!(term.driver_resistance_ohm >= 0.0) || !(term.load_capacitance_f >= 0.0)) {
        throw ValidationError("termination values must be >= 0");
    }

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& c : couplings) {
        if (c.first >= lines.size() || c.second >= lines.size() || c.first == c.second) {
            throw ValidationError(fmt::format("coupling references undeclared pair ({}, {})", c.first, c.second));
        }
        const auto key = std::minmax(c.first, c.second);
        if (!seen.insert(key).second) {
            throw ValidationError(fmt::format("duplicate coupling for {}/{}", lines[c.first].name,
                                              lines[c.second].name));
        }
        if (!(c.m_total >= 0.0) || !(c.cm_total >= 0.0) || !std::isfinite(c.m_total) ||
            !std::isfinite(c.cm_total)) {
            throw ValidationError("coupling values must be finite and >= 0");
        }
        const bool adjacent = key.second == key.first + 1;
        if (c.cm_total > 0.0 && !adjacent) {
            throw ValidationError(fmt::format("capacitive coupling between non-adjacent lines {}/{}",
                                              lines[c.first].name, lines[c.second].name));
        }
    }
}

}  // namespace

CoupledNetwork build_ladder(std::span<const LineSpec> lines,
                            std::span<const LineCoupling> couplings,
                            const TerminationSpec& termination,
                            const std::optional<TapSchedule>& taps,
                            int n_segments,
                            std::string scenario) {
    check_inputs(lines, couplings, termination, n_segments);
    if (taps) check_taps(*taps, n_segments);
    check_line_inductance(lines, couplings);

    const int n = n_segments;
    CoupledNetwork net;
    net.scenario = std::move(scenario);
    net.n_segments = n;
    net.nodes.push_back({"0", NodeKind::ground, 0, 0});

    auto add_node = [&](std::string label, NodeKind kind, std::size_t line, int seg) {
        net.nodes.push_back({std::move(label), kind, line, seg});
        return static_cast<NodeId>(net.nodes.size() - 1);
    };

    // branch index of (line, segment k), k = 1..n
    std::vector<std::vector<std::size_t>> branch(lines.size(), std::vector<std::size_t>(n + 1, 0));

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto& spec = lines[li];
        LineInfo info{spec.name, spec.role, {}};
        for (int k = 0; k <= n; ++k) {
            info.ladder.push_back(add_node(fmt::format("{}_{}", spec.name, k), NodeKind::ladder, li, k));
        }

        const double r_seg = spec.r_total / n;
        const double l_seg = spec.l_total / n;
        const double c_seg = spec.c_total / n;
        for (int k = 1; k <= n; ++k) {
            NodeId from = info.ladder[k - 1];
            if (r_seg > 0.0) {
                const NodeId mid = add_node(fmt::format("{}_m{}", spec.name, k), NodeKind::internal, li, k);
                net.resistors.push_back({fmt::format("R{}_{}", spec.name, k), from, mid, r_seg});
                from = mid;
            }
            branch[li][k] = net.inductors.size();
            net.inductors.push_back({fmt::format("L{}_{}", spec.name, k), from, info.ladder[k], l_seg, li, k});
            net.capacitors.push_back({fmt::format("C{}_{}", spec.name, k), info.ladder[k], kGround, c_seg});
        }

        if (spec.role == LineRole::shield) {
            const double tie = taps ? taps->tie_resistance_ohm : 0.0;
            std::vector<int> positions{0};
            if (taps) {
                for (double f : taps->fractions) positions.push_back(static_cast<int>(std::lround(f * n)));
            }
            positions.push_back(n);
            for (int k : positions) {
                net.ties.push_back({fmt::format("tie_{}_{}", spec.name, k), info.ladder[k], tie});
            }
        } else {
            net.sources.push_back({fmt::format("V{}", spec.name), fmt::format("{}_src", spec.name),
                                   info.ladder.front(), termination.driver_resistance_ohm,
                                   spec.role == LineRole::aggressor, li});
            net.capacitors.push_back({fmt::format("Cload_{}", spec.name), info.ladder.back(), kGround,
                                      termination.load_capacitance_f});
        }
        net.lines.push_back(std::move(info));
    }

    for (const auto& c : couplings) {
        const auto [a, b] = std::minmax(c.first, c.second);
        const auto& na = net.lines[a];
        const auto& nb = net.lines[b];
        if (c.cm_total > 0.0) {
            for (int k = 1; k <= n; ++k) {
                net.capacitors.push_back({fmt::format("C{}_{}_{}", na.name, nb.name, k), na.ladder[k],
                                          nb.ladder[k], c.cm_total / n});
            }
        }
        if (c.m_total != 0.0) {
            for (int k = 1; k <= n; ++k) {
                net.mutuals.push_back({fmt::format("K{}_{}_{}", na.name, nb.name, k), branch[a][k],
                                       branch[b][k], c.m_total / n});
            }
        }
    }
    return net;
}

namespace {

struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<Finding> validate_network(const CoupledNetwork& net) {
    std::vector<Finding> findings;
    const std::size_t nn = net.node_count();
    auto bad_node = [&](NodeId id) { return id >= nn; };
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };

    for (const auto& r : net.resistors) {
        if (bad_node(r.a) || bad_node(r.b)) findings.push_back({FindingKind::reference, r.name, "unknown node"});
        if (!positive(r.ohms)) findings.push_back({FindingKind::value, r.name, "resistance must be > 0"});
    }
    for (const auto& c : net.capacitors) {
        if (bad_node(c.a) || bad_node(c.b)) findings.push_back({FindingKind::reference, c.name, "unknown node"});
        if (!std::isfinite(c.farads) || c.farads < 0.0) {
            findings.push_back({FindingKind::value, c.name, "capacitance must be >= 0"});
        }
    }
    for (const auto& l : net.inductors) {
        if (bad_node(l.a) || bad_node(l.b)) findings.push_back({FindingKind::reference, l.name, "unknown node"});
        if (!positive(l.henries)) findings.push_back({FindingKind::value, l.name, "inductance must be > 0"});
    }
    for (const auto& s : net.sources) {
        if (bad_node(s.node)) findings.push_back({FindingKind::reference, s.name, "unknown node"});
        if (!std::isfinite(s.series_ohm) || s.series_ohm < 0.0) {
            findings.push_back({FindingKind::value, s.name, "series resistance must be >= 0"});
        }
    }
    for (const auto& t : net.ties) {
        if (bad_node(t.node)) findings.push_back({FindingKind::reference, t.name, "unknown node"});
        if (!std::isfinite(t.ohms) || t.ohms < 0.0) {
            findings.push_back({FindingKind::value, t.name, "tie resistance must be >= 0"});
        }
    }

    bool mutual_refs_ok = true;
    bool pair_violation = false;
    for (const auto& m : net.mutuals) {
        if (m.first_branch >= net.inductors.size() || m.second_branch >= net.inductors.size() ||
            m.first_branch == m.second_branch) {
            findings.push_back({FindingKind::reference, m.name, "unknown inductor branch"});
            mutual_refs_ok = false;
            continue;
        }
        const double la = net.inductors[m.first_branch].henries;
        const double lb = net.inductors[m.second_branch].henries;
        const double k = std::abs(m.henries) / std::sqrt(la * lb);
        if (!(k < 1.0)) {
            findings.push_back({FindingKind::spd, m.name, fmt::format("coupling coefficient k = {:.6g} >= 1", k)});
            pair_violation = true;
        }
    }
    if (mutual_refs_ok && !pair_violation && !net.inductors.empty()) {
        const std::size_t nb = net.inductors.size();
        std::vector<double> mat(nb * nb, 0.0);
        for (std::size_t i = 0; i < nb; ++i) mat[i * nb + i] = net.inductors[i].henries;
        for (const auto& m : net.mutuals) {
            mat[m.first_branch * nb + m.second_branch] += m.henries;
            mat[m.second_branch * nb + m.first_branch] += m.henries;
        }
        if (!is_positive_definite(std::move(mat), nb)) {
            findings.push_back({FindingKind::spd, "inductance matrix", "not positive definite"});
        }
    }

    // DC connectivity through R, L, ties and sources.
    DisjointSet ds(nn);
    auto join = [&](NodeId a, NodeId b) {
        if (!bad_node(a) && !bad_node(b)) ds.unite(a, b);
    };
    for (const auto& r : net.resistors) join(r.a, r.b);
    for (const auto& l : net.inductors) join(l.a, l.b);
    for (const auto& t : net.ties) join(t.node, kGround);
    for (const auto& s : net.sources) join(s.node, kGround);

    std::vector<std::vector<std::string>> floating(nn);
    for (std::size_t i = 1; i < nn; ++i) {
        if (ds.find(i) != ds.find(kGround)) floating[ds.find(i)].push_back(net.nodes[i].label);
    }
    for (const auto& group : floating) {
        if (group.empty()) continue;
        std::string labels;
        for (const auto& g : group) labels += (labels.empty() ? "" : ",") + g;
        findings.push_back({FindingKind::connectivity, group.front(), "no DC path to ground: " + labels});
    }
    return findings;
}

}  // namespace xtalk

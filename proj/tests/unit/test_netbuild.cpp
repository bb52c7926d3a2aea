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

#include "support/networks.hpp"
#include "xtalk/errors.hpp"
#include "xtalk/netbuild.hpp"
#include "xtalk/scenario.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>
#include <gtest/gtest.h>
#include <random>
#include <set>
#include <tuple>

using namespace xtalk;

namespace {

LineSpec line(std::string name, LineRole role) { return {std::move(name), role, 500.0, 83.24e-6, 134.41e-12}; }

std::size_t count_prefix(const auto& elems, std::string_view prefix) {
    return static_cast<std::size_t>(
        std::count_if(elems.begin(), elems.end(), [&](const auto& e) { return e.name.starts_with(prefix); }));
}

// Element list described by node labels only, so two builds can be compared
// without depending on node numbering or element order.
std::vector<std::string> describe(const CoupledNetwork& net) {
    auto lbl = [&](NodeId n) { return net.nodes[n].label; };
    auto pair = [&](NodeId a, NodeId b) {
        auto x = lbl(a), y = lbl(b);
        if (y < x) std::swap(x, y);
        return x + "|" + y;
    };
    std::vector<std::string> out;
    for (const auto& r : net.resistors) out.push_back(fmt::format("R {} {:.12g}", pair(r.a, r.b), r.ohms));
    for (const auto& c : net.capacitors) out.push_back(fmt::format("C {} {:.12g}", pair(c.a, c.b), c.farads));
    for (const auto& l : net.inductors) {
        out.push_back(fmt::format("L {}>{} {:.12g}", lbl(l.a), lbl(l.b), l.henries));
    }
    for (const auto& m : net.mutuals) {
        auto a = net.inductors[m.first_branch].name, b = net.inductors[m.second_branch].name;
        if (b < a) std::swap(a, b);
        out.push_back(fmt::format("K {}|{} {:.12g}", a, b, m.henries));
    }
    for (const auto& s : net.sources) {
        out.push_back(fmt::format("V {} {} {:.12g} {}", s.label, lbl(s.node), s.series_ohm, s.driven));
    }
    for (const auto& t : net.ties) out.push_back(fmt::format("T {} {:.12g}", lbl(t.node), t.ohms));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(BuildLadder, SingleLineSingleSegment) {
    const std::array lines{line("a", LineRole::aggressor)};
    const auto net = build_ladder(lines, {}, {}, std::nullopt, 1);
    EXPECT_EQ(net.node_count() - 1, 3u);  // driver, mid, load
    EXPECT_EQ(net.sources.size(), 1u);
    EXPECT_DOUBLE_EQ(net.sources[0].series_ohm, 82.76);
    EXPECT_EQ(net.resistors.size(), 1u);
    EXPECT_EQ(net.inductors.size(), 1u);
    EXPECT_EQ(count_prefix(net.capacitors, "Cload_"), 1u);
    EXPECT_EQ(net.capacitors.size(), 2u);
    EXPECT_TRUE(validate_network(net).empty());
}

TEST(BuildLadder, TwoCoupledLinesCountsByTraversal) {
    const std::array lines{line("agg", LineRole::aggressor), line("vic", LineRole::victim)};
    const std::array couplings{LineCoupling{0, 1, 8.21e-6, 69.5e-12}};
    const auto net = build_ladder(lines, couplings, {}, std::nullopt, 12);

    std::size_t coupling_caps = 0;
    for (const auto& c : net.capacitors) {
        if (c.a != kGround && c.b != kGround && net.nodes[c.a].line != net.nodes[c.b].line) ++coupling_caps;
    }
    std::size_t cross_mutuals = 0;
    for (const auto& m : net.mutuals) {
        const auto& a = net.inductors[m.first_branch];
        const auto& b = net.inductors[m.second_branch];
        if (a.line != b.line && a.segment == b.segment) ++cross_mutuals;
    }
    EXPECT_EQ(net.inductors.size(), 24u);
    EXPECT_EQ(coupling_caps, 12u);
    EXPECT_EQ(cross_mutuals, 12u);
    EXPECT_EQ(net.mutuals.size(), 12u);
    EXPECT_TRUE(validate_network(net).empty());
}

TEST(BuildLadder, ShieldWithQuarterTaps) {
    const auto net = testnet::preset(Preset::shield_3taps, 12);
    std::set<std::string> tied;
    for (const auto& t : net.ties) tied.insert(net.nodes[t.node].label);
    EXPECT_EQ(tied, (std::set<std::string>{"shd_0", "shd_3", "shd_6", "shd_9", "shd_12"}));
    EXPECT_EQ(count_prefix(net.capacitors, "Cagg_vic_"), 0u);
    EXPECT_EQ(count_prefix(net.capacitors, "Cagg_shd_"), 12u);
    EXPECT_EQ(count_prefix(net.capacitors, "Cshd_vic_"), 12u);
    EXPECT_EQ(count_prefix(net.mutuals, "Kagg_shd_"), 12u);
    EXPECT_EQ(count_prefix(net.mutuals, "Kshd_vic_"), 12u);
    EXPECT_EQ(count_prefix(net.mutuals, "Kagg_vic_"), 12u);
    EXPECT_TRUE(net.sources.size() == 2);
    EXPECT_TRUE(validate_network(net).empty());
}

TEST(BuildLadder, ElementCountIdentities) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int nlines = 1 + static_cast<int>(rng() % 4);
        const int n = 1 + static_cast<int>(rng() % 9);
        std::vector<LineSpec> lines;
        for (int i = 0; i < nlines; ++i) {
            lines.push_back(line(fmt::format("l{}", i), i == 0 ? LineRole::aggressor : LineRole::victim));
        }
        std::vector<LineCoupling> couplings;
        std::size_t p = 0, q = 0;
        for (int i = 0; i < nlines; ++i) {
            for (int j = i + 1; j < nlines; ++j) {
                if (rng() % 3 == 0) continue;
                const bool adjacent = j == i + 1;
                const double cm = adjacent && rng() % 2 ? 10e-12 : 0.0;
                const double m = rng() % 2 ? 2e-6 : 0.0;
                if (cm == 0.0 && m == 0.0) continue;
                couplings.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), m, cm});
                p += cm > 0.0;
                q += m != 0.0;
            }
        }
        const auto net = build_ladder(lines, couplings, {}, std::nullopt, n);
        const std::size_t L = static_cast<std::size_t>(nlines), N = static_cast<std::size_t>(n);
        EXPECT_EQ(net.resistors.size(), L * N);
        EXPECT_EQ(net.inductors.size(), L * N);
        EXPECT_EQ(count_prefix(net.capacitors, "Cload_"), L);
        EXPECT_EQ(net.capacitors.size() - L, L * N + p * N);
        EXPECT_EQ(net.mutuals.size(), q * N);
        EXPECT_EQ(net.sources.size(), L);
        EXPECT_TRUE(validate_network(net).empty());
    }
}

TEST(BuildLadder, TapOffNodeSuggestsSegments) {
    const std::array lines{line("agg", LineRole::aggressor), line("shd", LineRole::shield),
                           line("vic", LineRole::victim)};
    try {
        build_ladder(lines, {}, {}, TapSchedule{{0.25, 0.5, 0.75}, 0.0}, 6);
        FAIL() << "expected PlacementError";
    } catch (const PlacementError& e) {
        EXPECT_GT(e.suggested_segments(), 0);
        EXPECT_EQ(e.suggested_segments() % 4, 0);
        EXPECT_NO_THROW(build_ladder(lines, {}, {}, TapSchedule{{0.25, 0.5, 0.75}, 0.0}, e.suggested_segments()));
    }
}

TEST(BuildLadder, RejectsBadTapFractions) {
    const std::array lines{line("shd", LineRole::shield)};
    EXPECT_THROW(build_ladder(lines, {}, {}, TapSchedule{{0.5, 0.25}, 0.0}, 12), ValidationError);
    EXPECT_THROW(build_ladder(lines, {}, {}, TapSchedule{{1.0}, 0.0}, 12), ValidationError);
}

TEST(BuildLadder, NonSpdInductanceNamesPair) {
    const std::array lines{line("agg", LineRole::aggressor), line("vic", LineRole::victim)};
    const std::array couplings{LineCoupling{0, 1, 1.2 * 83.24e-6, 0.0}};
    try {
        build_ladder(lines, couplings, {}, std::nullopt, 4);
        FAIL() << "expected CouplingError";
    } catch (const CouplingError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("agg"), std::string::npos) << what;
        EXPECT_NE(what.find("vic"), std::string::npos) << what;
    }
}

TEST(BuildLadder, RejectsCapacitanceBetweenNonNeighbours) {
    const std::array lines{line("a", LineRole::aggressor), line("b", LineRole::shield), line("c", LineRole::victim)};
    const std::array couplings{LineCoupling{0, 2, 0.0, 1e-12}};
    EXPECT_THROW(build_ladder(lines, couplings, {}, std::nullopt, 4), ValidationError);
}

TEST(BuildLadder, RejectsZeroSegments) {
    const std::array lines{line("a", LineRole::aggressor)};
    EXPECT_THROW(build_ladder(lines, {}, {}, std::nullopt, 0), ValidationError);
}

TEST(ValidateNetwork, InjectedCouplingAboveOne) {
    auto net = testnet::preset(Preset::no_shield, 4);
    net.mutuals[1].henries = 1.2 * net.inductors[net.mutuals[1].first_branch].henries;
    const auto f = validate_network(net);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].kind, FindingKind::spd);
    EXPECT_EQ(f[0].element, net.mutuals[1].name);
}

TEST(ValidateNetwork, InjectedFloatingNode) {
    auto net = testnet::preset(Preset::no_shield, 4);
    net.nodes.push_back({"island", NodeKind::ladder, 0, 0});
    net.capacitors.push_back({"Cisland", static_cast<NodeId>(net.nodes.size() - 1), kGround, 1e-15});
    const auto f = validate_network(net);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].kind, FindingKind::connectivity);
    EXPECT_NE(f[0].message.find("island"), std::string::npos);
}

TEST(ValidateNetwork, BadReference) {
    auto net = testnet::preset(Preset::no_shield, 2);
    net.resistors[0].b = 999;
    const auto f = validate_network(net);
    ASSERT_FALSE(f.empty());
    EXPECT_EQ(f[0].kind, FindingKind::reference);
    EXPECT_EQ(f[0].element, net.resistors[0].name);
}

TEST(Presets, NoShieldValues) {
    const auto net = testnet::preset(Preset::no_shield, 12);
    ASSERT_EQ(net.lines.size(), 2u);
    double cm = 0.0, m = 0.0;
    for (const auto& c : net.capacitors) {
        if (c.name.starts_with("Cagg_vic_")) cm += c.farads;
    }
    for (const auto& k : net.mutuals) m += k.henries;
    EXPECT_NEAR(cm, 69.50e-12, 1e-20);
    EXPECT_NEAR(m, 8.21e-6, 1e-15);
}

TEST(Presets, ShieldValues) {
    const auto net = testnet::preset(Preset::shield, 12);
    ASSERT_EQ(net.lines.size(), 3u);
    double cm_as = 0.0, cm_sv = 0.0, m_av = 0.0;
    for (const auto& c : net.capacitors) {
        if (c.name.starts_with("Cagg_shd_")) cm_as += c.farads;
        if (c.name.starts_with("Cshd_vic_")) cm_sv += c.farads;
    }
    for (const auto& k : net.mutuals) {
        if (k.name.starts_with("Kagg_vic_")) m_av += k.henries;
    }
    EXPECT_NEAR(cm_as, 27.47e-12, 1e-20);
    EXPECT_NEAR(cm_sv, 27.47e-12, 1e-20);
    EXPECT_EQ(count_prefix(net.capacitors, "Cagg_vic_"), 0u);
    EXPECT_GT(m_av, 0.0);
    EXPECT_EQ(net.ties.size(), 2u);
}

TEST(Presets, ThreeTapsAddsInteriorTies) {
    const auto shield = testnet::preset(Preset::shield, 12);
    const auto taps = testnet::preset(Preset::shield_3taps, 12);
    EXPECT_EQ(taps.ties.size(), shield.ties.size() + 3);
    auto a = describe(shield), b = describe(taps);
    std::vector<std::string> extra;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(extra));
    EXPECT_EQ(extra.size(), 3u);
    for (const auto& e : extra) EXPECT_TRUE(e.starts_with("T shd_")) << e;
}

TEST(Presets, UnknownName) { EXPECT_THROW(scenario_preset("two-shields", PresetParams{}), ValidationError); }

TEST(Presets, AllValidate) {
    for (auto p : {Preset::no_shield, Preset::shield, Preset::shield_3taps}) {
        for (int n : {4, 12, 24}) EXPECT_TRUE(validate_network(testnet::preset(p, n)).empty());
    }
}

TEST(Symmetry, SwappingAggressorAndVictimIsRelabeling) {
    const std::array couplings{LineCoupling{0, 1, 8.21e-6, 69.5e-12}};
    const std::array ab{line("x", LineRole::aggressor), line("y", LineRole::victim)};
    const std::array ba{line("y", LineRole::victim), line("x", LineRole::aggressor)};
    const auto n1 = build_ladder(ab, couplings, {}, std::nullopt, 6);
    const auto n2 = build_ladder(ba, couplings, {}, std::nullopt, 6);
    EXPECT_EQ(describe(n1), describe(n2));
}

TEST(Symmetry, RemovingShieldRestoresNoShield) {
    auto net = testnet::preset(Preset::shield, 12);
    const auto shd = *net.find_line("shd");
    const int n = net.n_segments;

    CoupledNetwork out;
    out.scenario = net.scenario;
    out.n_segments = n;
    std::vector<NodeId> remap(net.node_count(), 0);
    for (NodeId i = 0; i < net.node_count(); ++i) {
        if (i != kGround && net.nodes[i].line == shd) continue;
        remap[i] = static_cast<NodeId>(out.nodes.size());
        out.nodes.push_back(net.nodes[i]);
    }
    auto on_shield = [&](NodeId x) { return x != kGround && net.nodes[x].line == shd; };
    for (auto r : net.resistors) {
        if (on_shield(r.a) || on_shield(r.b)) continue;
        r.a = remap[r.a];
        r.b = remap[r.b];
        out.resistors.push_back(r);
    }
    for (auto c : net.capacitors) {
        if (on_shield(c.a) || on_shield(c.b)) continue;
        c.a = remap[c.a];
        c.b = remap[c.b];
        out.capacitors.push_back(c);
    }
    std::vector<std::size_t> branch_map(net.inductors.size(), SIZE_MAX);
    for (std::size_t i = 0; i < net.inductors.size(); ++i) {
        auto l = net.inductors[i];
        if (l.line == shd) continue;
        l.a = remap[l.a];
        l.b = remap[l.b];
        branch_map[i] = out.inductors.size();
        out.inductors.push_back(l);
    }
    for (auto m : net.mutuals) {
        if (branch_map[m.first_branch] == SIZE_MAX || branch_map[m.second_branch] == SIZE_MAX) continue;
        m.first_branch = branch_map[m.first_branch];
        m.second_branch = branch_map[m.second_branch];
        out.mutuals.push_back(m);
    }
    for (auto s : net.sources) {
        s.node = remap[s.node];
        out.sources.push_back(s);
    }
    // Restore the direct signal-signal capacitance.
    const auto agg = *net.find_line("agg");
    const auto vic = *net.find_line("vic");
    for (int k = 1; k <= n; ++k) {
        out.capacitors.push_back({fmt::format("Cagg_vic_{}", k), remap[net.lines[agg].ladder[k]],
                                  remap[net.lines[vic].ladder[k]], tabulated::kCouplingNoShield / n});
    }

    EXPECT_EQ(describe(out), describe(testnet::preset(Preset::no_shield, 12)));
}

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

#include "xtalk/errors.hpp"
#include "xtalk/extract.hpp"

#include <array>
#include <cmath>
#include <gtest/gtest.h>
#include <random>

using namespace xtalk;

namespace {

void expect_rel(double actual, double expected, double rel) {
    EXPECT_LE(std::abs(actual - expected), rel * std::abs(expected)) << actual << " vs " << expected;
}

}  // namespace

TEST(LineResistance, Examples) {
    EXPECT_DOUBLE_EQ(line_resistance(0.05, 5000, 5000), 0.05);
    EXPECT_DOUBLE_EQ(line_resistance(0.05, 5000, 2), 125.0);
    EXPECT_DOUBLE_EQ(line_resistance(0.05, 5000, 0.5), 500.0);
}

TEST(LineResistance, RejectsNonPositive) {
    EXPECT_THROW(line_resistance(0.0, 5000, 2), DomainError);
    EXPECT_THROW(line_resistance(0.05, -1, 2), DomainError);
    EXPECT_THROW(line_resistance(0.05, 5000, 0), DomainError);
}

TEST(LineResistance, LinearInLengthInverseInWidth) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.1, 1000.0);
    for (int i = 0; i < 200; ++i) {
        const double l = u(rng), w = u(rng), k = u(rng) / 100.0;
        const double r = line_resistance(0.05, l, w);
        expect_rel(line_resistance(0.05, k * l, w), k * r, 1e-12);
        expect_rel(line_resistance(0.05, l, k * w), r / k, 1e-12);
    }
}

TEST(SelfInductance, Examples) {
    EXPECT_NEAR(self_inductance(5000, 2, 2, 1), 83.2405, 5e-5);
    EXPECT_NEAR(self_inductance(1, 1.64872, 1.64872, 1), 0.0, 1e-7);
    EXPECT_NEAR(self_inductance(1000, 1, 1, 1), 14.8155, 5e-5);
}

TEST(SelfInductance, RejectsNonPositive) {
    EXPECT_THROW(self_inductance(0, 2, 2, 1), DomainError);
    EXPECT_THROW(self_inductance(5000, 2, 2, 0), DomainError);
}

TEST(SelfInductance, IncreasesWithLength) {
    double prev = self_inductance(10, 2, 2, 1);
    for (double l = 20; l <= 20000; l *= 1.1) {
        const double v = self_inductance(l, 2, 2, 1);
        EXPECT_GT(v, prev) << "l = " << l;
        prev = v;
    }
}

TEST(MutualInductance, Examples) {
    EXPECT_NEAR(mutual_inductance_bracket(5000, 1), 8.2105, 5e-5);
    EXPECT_NEAR(mutual_inductance_bracket(5000, 2), 7.5176, 5e-5);
    EXPECT_NEAR(mutual_inductance(100, 100), 0.05579, 5e-6);
}

TEST(MutualInductance, BracketDecreasesWithSeparation) {
    const double l = 5000;
    double prev = mutual_inductance_bracket(l, 0.1);
    for (double d = 0.11; d <= l; d *= 1.05) {
        const double v = mutual_inductance_bracket(l, d);
        EXPECT_LT(v, prev) << "d = " << d;
        prev = v;
    }
}

TEST(MutualInductance, RejectsNonPositive) {
    EXPECT_THROW(mutual_inductance_bracket(5000, 0), DomainError);
    EXPECT_THROW(mutual_inductance(-1, 1), DomainError);
}

TEST(LineCapacitance, Examples) {
    expect_rel(line_capacitance(2, 2, 2, 3.9), 134.41e-12, 0.005);
    expect_rel(line_capacitance(1e-12, 2, 1e-12, 3.9), 0.77 * 3.9 * kEpsilon0, 0.002);
    expect_rel(line_capacitance(4, 2, 2, 3.9), 175.90e-12, 5e-4);
}

TEST(LineCapacitance, RejectsNonPositive) { EXPECT_THROW(line_capacitance(2, 0, 2, 3.9), DomainError); }

TEST(CouplingCapacitance, TableCompatExamples) {
    const auto& tc = CouplingCoefficients::table_compat();
    const double d1 = coupling_capacitance(2, 2, 2, 1, 3.9, tc);
    const double d2 = coupling_capacitance(2, 2, 2, 2, 3.9, tc);
    expect_rel(d1, 69.10e-12, 1e-3);
    expect_rel(d1, 69.50e-12, 0.02);
    expect_rel(d2, 27.30e-12, 1e-3);
    expect_rel(d2, 27.47e-12, 0.02);
}

TEST(CouplingCapacitance, PrintedCoefficientsExample) {
    expect_rel(coupling_capacitance(2, 2, 2, 2, 3.9, CouplingCoefficients::printed()), 62.02e-12, 1e-3);
}

TEST(CouplingCapacitance, DecreasesWithSeparationForBothSets) {
    for (const auto* set : {&CouplingCoefficients::table_compat(), &CouplingCoefficients::printed()}) {
        double prev = coupling_capacitance(2, 2, 2, 0.05, 3.9, *set);
        for (double d = 0.06; d < 500; d *= 1.07) {
            const double v = coupling_capacitance(2, 2, 2, d, 3.9, *set);
            EXPECT_LT(v, prev) << set->name << " d = " << d;
            prev = v;
        }
    }
}

TEST(CouplingCoefficients, ByName) {
    EXPECT_EQ(&CouplingCoefficients::by_name("table-compat"), &CouplingCoefficients::table_compat());
    EXPECT_EQ(&CouplingCoefficients::by_name("paper-literal"), &CouplingCoefficients::printed());
    EXPECT_THROW(CouplingCoefficients::by_name("nope"), DomainError);
}

TEST(Formulas, ArePure) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.5, 50.0);
    for (int i = 0; i < 50; ++i) {
        const double w = u(rng), t = u(rng), h = u(rng), d = u(rng), l = 100 * u(rng);
        EXPECT_EQ(self_inductance(l, w, t, 1), self_inductance(l, w, t, 1));
        EXPECT_EQ(mutual_inductance(l, d), mutual_inductance(l, d));
        EXPECT_EQ(line_capacitance(w, h, t, 3.9), line_capacitance(w, h, t, 3.9));
        EXPECT_EQ(coupling_capacitance(w, h, t, d, 3.9, CouplingCoefficients::table_compat()),
                  coupling_capacitance(w, h, t, d, 3.9, CouplingCoefficients::table_compat()));
    }
}

TEST(Geometry, Validate) {
    InterconnectGeometry g;
    EXPECT_NO_THROW(g.validate());
    g.eps_rel = 0.5;
    EXPECT_THROW(g.validate(), DomainError);
    g = {};
    g.height_um = 0;
    EXPECT_THROW(g.validate(), DomainError);
    g = {};
    g.lambda = 0;
    EXPECT_THROW(g.validate(), DomainError);
}

TEST(ExtractAll, DefaultsWithResistanceOverrideGiveTableColumn) {
    const std::array<InterconnectGeometry, 2> geo{};
    const std::array<PairSeparation, 1> sep{{{0, 1, 1.0}}};
    ExtractOptions opt;
    opt.overrides.r_total = 500.0;
    const auto e = extract_all(geo, sep, opt);
    ASSERT_EQ(e.lines.size(), 2u);
    EXPECT_DOUBLE_EQ(e.lines[0].r_total, 500.0);
    expect_rel(e.lines[0].l_total, 83.24, 0.001);
    expect_rel(e.lines[0].c_total, 134.41e-12, 0.005);
    const auto p = e.pair(0, 1);
    ASSERT_TRUE(p);
    expect_rel(p->m_total, 8.21, 0.005);
    expect_rel(p->cm_total, 69.50e-12, 0.02);
}

TEST(ExtractAll, SingleLineHasNoPairs) {
    const std::array<InterconnectGeometry, 1> geo{};
    const auto e = extract_all(geo, {});
    EXPECT_EQ(e.lines.size(), 1u);
    EXPECT_TRUE(e.pairs.empty());
}

TEST(ExtractAll, SymmetricPairLookup) {
    const std::array<InterconnectGeometry, 2> geo{};
    const std::array<PairSeparation, 1> sep{{{1, 0, 2.0}}};
    const auto e = extract_all(geo, sep);
    const auto a = e.pair(0, 1);
    const auto b = e.pair(1, 0);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->m_total, b->m_total);
    EXPECT_EQ(a->cm_total, b->cm_total);
    EXPECT_EQ(e.coupling_coefficient(0, 1), e.coupling_coefficient(1, 0));
}

TEST(ExtractAll, CouplingAtOrAboveOneNamesPair) {
    const std::array<InterconnectGeometry, 2> geo{};
    const std::array<PairSeparation, 1> sep{{{0, 1, 1.0}}};
    ExtractOptions opt;
    opt.overrides.m_total = 100.0;
    try {
        extract_all(geo, sep, opt, std::array<std::string, 2>{"agg", "vic"});
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("agg"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("vic"), std::string::npos) << e.what();
    }
}

TEST(ExtractAll, RequiresEveryNeighbourSeparation) {
    const std::array<InterconnectGeometry, 3> geo{};
    const std::array<PairSeparation, 1> sep{{{0, 1, 1.0}}};
    EXPECT_THROW(extract_all(geo, sep), ValidationError);
}

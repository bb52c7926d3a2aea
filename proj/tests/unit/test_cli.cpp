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

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <gtest/gtest.h>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome cli(const std::string& args) {
    const std::string cmd = std::string("\"") + XTALK_CLI_PATH + "\" " + args + " 2>&1";
    Outcome r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    while (const auto n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("xtalk_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string config(const std::string& name) { return (fs::path(XTALK_CONFIG_DIR) / name).string(); }

}  // namespace

TEST(Cli, ExtractPrintsTable) {
    const auto r = cli("extract --preset no-shield");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("with shield"), std::string::npos) << r.out;
}

TEST(Cli, RunWritesOutputs) {
    const auto dir = scratch("run");
    const auto r = cli("run --config " + config("shield-3taps.json") + " --set sim.t_end_ns=20 --out " + dir.string());
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(fs::exists(dir / "shield-3taps_voltages.csv"));
    EXPECT_TRUE(fs::exists(dir / "shield-3taps_currents.csv"));
    EXPECT_TRUE(fs::exists(dir / "shield-3taps_summary.json"));
}

TEST(Cli, SweepAndExport) {
    const auto dir = scratch("sweep");
    auto r = cli("sweep --preset shield --axis tap_count --values 0,3 --set sim.t_end_ns=20 --out " + dir.string());
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(fs::exists(dir / "shield_sweep_tap_count.csv"));
    r = cli("export-netlist --preset shield-3taps --tie-style tiny-resistor");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find(".tran"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitOne) {
    EXPECT_EQ(cli("run --preset four-shields").code, 1);
    EXPECT_EQ(cli("run").code, 1);
    EXPECT_EQ(cli("run --bogus-flag").code, 1);
    EXPECT_EQ(cli("sweep --preset shield --axis tap_count --values 3").code, 1);
    EXPECT_EQ(cli("run --preset no-shield --set shield.tap_count=3").code, 1);

    const auto dir = scratch("badcfg");
    std::ofstream(dir / "c.json") << R"({"scenario": {"preset": "shield"}})";
    const auto r = cli("run --config " + (dir / "c.json").string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("geometry"), std::string::npos) << r.out;
}

TEST(Cli, NumericalErrorsExitTwo) {
    const auto dir = scratch("diverge");
    const auto r = cli("run --preset no-shield --set stimulus.amplitude_v=1e308 --out " + dir.string());
    EXPECT_EQ(r.code, 2) << r.out;
}

TEST(Cli, IoErrorsExitThree) {
    EXPECT_EQ(cli("run --config /nonexistent/xtalk.json").code, 3);
    const auto r = cli("run --preset no-shield --set sim.t_end_ns=5 --out /proc/xtalk/forbidden");
    EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(cli("--help").code, 0); }

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

#include "xtalk/io.hpp"

#include "xtalk/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace xtalk {

namespace {

// No negative zeros in the files.
double tidy(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

TraceKind trace_kind_of(std::string_view label) {
    if (label.starts_with("I(") && label.ends_with(")")) return TraceKind::branch;
    if (label.ends_with("_src")) return TraceKind::source;
    return TraceKind::node;
}

void write_waveform_csv(std::ostream& out, const WaveformSet& w, std::span<const TraceKind> kinds) {
    std::vector<const Trace*> cols;
    for (const auto& t : w.traces) {
        if (kinds.empty() || std::find(kinds.begin(), kinds.end(), t.kind) != kinds.end()) cols.push_back(&t);
    }
    std::string line = "time";
    for (const auto* t : cols) {
        line += ',';
        line += t->label;
    }
    line += '\n';
    out << line;
    for (std::size_t i = 0; i < w.time.size(); ++i) {
        line = fmt::format("{:.9g}", tidy(w.time[i]));
        for (const auto* t : cols) fmt::format_to(std::back_inserter(line), ",{:.9g}", tidy(t->values[i]));
        line += '\n';
        out << line;
    }
}

void write_waveform_csv(const std::filesystem::path& path, const WaveformSet& w, std::span<const TraceKind> kinds) {
    std::ostringstream ss;
    write_waveform_csv(ss, w, kinds);
    write_text_file(path, ss.str());
}

namespace {

double parse_double(std::string_view s, std::size_t row) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw IoError(fmt::format("waveform CSV row {}: bad number '{}'", row, s));
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

WaveformSet read_waveform_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("waveform CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split(line);
    if (header.empty() || header[0] != "time") throw IoError("waveform CSV must start with a 'time' column");

    WaveformSet w;
    for (std::size_t c = 1; c < header.size(); ++c) {
        w.traces.push_back({std::string(header[c]), trace_kind_of(header[c]), {}});
    }
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw IoError(fmt::format("waveform CSV row {}: expected {} columns, got {}", row, header.size(),
                                      cells.size()));
        }
        w.time.push_back(parse_double(cells[0], row));
        for (std::size_t c = 1; c < cells.size(); ++c) w.traces[c - 1].values.push_back(parse_double(cells[c], row));
    }
    return w;
}

WaveformSet read_waveform_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    return read_waveform_csv(in);
}

void merge_waveforms(WaveformSet& into, const WaveformSet& more) {
    if (into.time.empty() && into.traces.empty()) into.time = more.time;
    if (into.time.size() != more.time.size()) throw IoError("waveform files have different sample counts");
    into.traces.insert(into.traces.end(), more.traces.begin(), more.traces.end());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", path.parent_path().string(), ec.message()));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace xtalk

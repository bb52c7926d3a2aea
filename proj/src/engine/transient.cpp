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
#include <optional>
#include <set>

namespace xtalk {

namespace {

struct Recorder {
    struct Column {
        enum class From { node, source, branch } from;
        std::size_t index;
    };
    std::vector<Column> columns;
};

// sum of C/h scaled plus G, as one matrix
linalg::DenseMatrix combine(const linalg::DenseMatrix& g, const linalg::DenseMatrix& c, double c_scale,
                            double g_scale) {
    linalg::DenseMatrix out(g.rows(), g.cols());
    auto o = out.data();
    auto gd = g.data();
    auto cd = c.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = c_scale * cd[i] + g_scale * gd[i];
    return out;
}

}  // namespace

WaveformSet run_transient(const CoupledNetwork& net, const Stimulus& stimulus, const SimConfig& config,
                          const simd::KernelTable& kernels) {
    stimulus.validate();
    config.validate();
    const MnaSystem sys = assemble(net);
    const std::size_t n = sys.size();
    const std::size_t steps = config.steps();
    const double dt = config.dt;

    std::vector<double> source_values(net.sources.size(), 0.0);
    auto set_sources = [&](double t) {
        const double u = stimulus.value(t);
        for (std::size_t i = 0; i < net.sources.size(); ++i) source_values[i] = net.sources[i].driven ? u : 0.0;
    };

    // Output selection.
    WaveformSet out;
    out.scenario = net.scenario;
    std::vector<Recorder::Column> columns;
    std::set<std::string> wanted(config.output_nodes.begin(), config.output_nodes.end());
    const bool all = wanted.empty();
    auto keep = [&](const std::string& label) { return all || wanted.erase(label) > 0; };
    for (NodeId node = 1; node < net.node_count(); ++node) {
        if (keep(net.nodes[node].label)) {
            out.traces.push_back({net.nodes[node].label, TraceKind::node, {}});
            columns.push_back({Recorder::Column::From::node, node});
        }
    }
    for (std::size_t i = 0; i < net.sources.size(); ++i) {
        if (keep(net.sources[i].label)) {
            out.traces.push_back({net.sources[i].label, TraceKind::source, {}});
            columns.push_back({Recorder::Column::From::source, i});
        }
    }
    for (std::size_t i = 0; i < net.inductors.size(); ++i) {
        const auto label = branch_label(net.inductors[i]);
        if (keep(label)) {
            out.traces.push_back({label, TraceKind::branch, {}});
            columns.push_back({Recorder::Column::From::branch, i});
        }
    }
    if (!wanted.empty()) throw ValidationError(fmt::format("unknown output '{}'", *wanted.begin()));
    out.time.reserve(steps + 1);
    for (auto& t : out.traces) t.values.reserve(steps + 1);

    auto record = [&](double t, std::span<const double> x) {
        const auto v = sys.node_voltages(x);
        out.time.push_back(t);
        for (std::size_t k = 0; k < columns.size(); ++k) {
            double value = 0.0;
            switch (columns[k].from) {
            case Recorder::Column::From::node: value = v[columns[k].index]; break;
            case Recorder::Column::From::source: value = source_values[columns[k].index]; break;
            case Recorder::Column::From::branch: value = x[sys.branch_index[columns[k].index]]; break;
            }
            out.traces[k].values.push_back(value);
        }
    };

    // Initial condition: DC solution with sources at their t = 0 value.
    std::vector<double> x(n, 0.0);
    set_sources(0.0);
    sys.rhs(source_values, x);
    {
        std::vector<Finding> floating;
        for (auto& f : validate_network(net)) {
            if (f.kind == FindingKind::connectivity) floating.push_back(std::move(f));
        }
        if (!floating.empty()) {
            throw SolverError("singular DC system: floating subnetwork " + floating.front().message);
        }
        const linalg::LuFactorization dc(sys.g, kernels);
        dc.solve(x);
    }
    record(0.0, x);

    // Backward Euler:  (G + C/h) x1 = (C/h) x0 + b1
    // Trapezoidal:     (G + 2C/h) x1 = (2C/h - G) x0 + b0 + b1
    const linalg::LuFactorization be(combine(sys.g, sys.c, 1.0 / dt, 1.0), kernels);
    const linalg::DenseMatrix be_hist = combine(sys.g, sys.c, 1.0 / dt, 0.0);
    std::optional<linalg::LuFactorization> tr;
    linalg::DenseMatrix tr_hist;
    if (config.method == Method::trapezoidal) {
        tr.emplace(combine(sys.g, sys.c, 2.0 / dt, 1.0), kernels);
        tr_hist = combine(sys.g, sys.c, 2.0 / dt, -1.0);
    }

    std::vector<double> rhs(n);
    std::vector<double> b_prev(n);
    std::vector<double> b_next(n);
    sys.rhs(source_values, b_prev);

    for (std::size_t step = 1; step <= steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        set_sources(t);
        sys.rhs(source_values, b_next);
        const bool use_be = config.method == Method::backward_euler || step == 1;
        if (use_be) {
            linalg::multiply(be_hist, x, rhs, kernels);
            for (std::size_t i = 0; i < n; ++i) rhs[i] += b_next[i];
            be.solve(rhs);
        } else {
            linalg::multiply(tr_hist, x, rhs, kernels);
            for (std::size_t i = 0; i < n; ++i) rhs[i] += b_prev[i] + b_next[i];
            tr->solve(rhs);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(rhs[i])) {
                throw DivergenceError(fmt::format("non-finite value in '{}' at t = {:.9g}", sys.labels[i], t), t);
            }
        }
        x.swap(rhs);
        b_prev.swap(b_next);
        record(t, x);
    }
    return out;
}

}  // namespace xtalk

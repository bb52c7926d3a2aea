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

// Reference transient solution by exact state transition.
//
// The MNA system G x + C x' = b u(t) is reduced to an ODE on the unknowns
// that carry a C entry. Ideal ground ties (v = 0 rows) are removed together
// with the node they pin. Remaining algebraic unknowns are eliminated with a
// Schur complement. For a piecewise-linear u(t) whose breakpoints fall on the
// time grid, propagating [x; u; du/dt] with exp(M h) is exact.

#include "xtalk/engine.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

namespace xtalk::oracle {

struct Reference {
    std::vector<double> time;
    std::vector<std::vector<double>> node_voltages;  // [sample][NodeId]
};

inline Reference expm_transient(const CoupledNetwork& net, const Stimulus& stim, double dt, std::size_t steps) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;

    const MnaSystem sys = assemble(net);
    const auto n = static_cast<Eigen::Index>(sys.size());
    MatrixXd g(n, n), c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = sys.g(i, j);
            c(i, j) = sys.c(i, j);
        }
    }
    // Unit-drive source vector.
    VectorXd bu = VectorXd::Zero(n);
    {
        std::vector<double> values(net.sources.size());
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = net.sources[i].driven ? 1.0 : 0.0;
        std::vector<double> tmp(sys.size());
        sys.rhs(values, tmp);
        for (Eigen::Index i = 0; i < n; ++i) bu(i) = tmp[i];
    }

    // Ideal ties: a row with a single G entry, no C entry and no drive.
    std::vector<bool> removed(n, false);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (c.row(r).cwiseAbs().sum() != 0.0 || bu(r) != 0.0) continue;
        Eigen::Index nz = -1;
        int count = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (g(r, j) != 0.0) {
                nz = j;
                ++count;
            }
        }
        if (count == 1 && nz != r) {
            removed[r] = true;   // the tie current's equation; the current itself is column r
            removed[nz] = true;  // the pinned node (its KCL row only determines the tie current)
        }
    }

    std::vector<Eigen::Index> dyn, alg;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (removed[i]) continue;
        const bool has_c = c.row(i).cwiseAbs().sum() != 0.0 || c.col(i).cwiseAbs().sum() != 0.0;
        (has_c ? dyn : alg).push_back(i);
    }
    auto sub = [](const MatrixXd& m, const std::vector<Eigen::Index>& r, const std::vector<Eigen::Index>& k) {
        MatrixXd out(r.size(), k.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            for (std::size_t j = 0; j < k.size(); ++j) out(i, j) = m(r[i], k[j]);
        }
        return out;
    };
    auto subv = [](const VectorXd& v, const std::vector<Eigen::Index>& r) {
        VectorXd out(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) out(i) = v(r[i]);
        return out;
    };

    const MatrixXd gdd = sub(g, dyn, dyn), gda = sub(g, dyn, alg), gad = sub(g, alg, dyn), gaa = sub(g, alg, alg);
    const MatrixXd cdd = sub(c, dyn, dyn);
    const VectorXd bd = subv(bu, dyn), ba = subv(bu, alg);

    Eigen::FullPivLU<MatrixXd> gaa_lu(gaa);
    if (!alg.empty() && !gaa_lu.isInvertible()) throw std::runtime_error("oracle: algebraic block is singular");
    const MatrixXd gaa_inv_gad = alg.empty() ? MatrixXd(0, dyn.size()) : MatrixXd(gaa_lu.solve(gad));
    const VectorXd gaa_inv_ba = alg.empty() ? VectorXd(0) : VectorXd(gaa_lu.solve(ba));

    Eigen::FullPivLU<MatrixXd> cdd_lu(cdd);
    if (!cdd_lu.isInvertible()) throw std::runtime_error("oracle: dynamic block is singular");
    const MatrixXd a = -cdd_lu.solve(gdd - gda * gaa_inv_gad);
    const VectorXd beta = cdd_lu.solve(bd - gda * gaa_inv_ba);

    const auto nd = static_cast<Eigen::Index>(dyn.size());
    MatrixXd m = MatrixXd::Zero(nd + 2, nd + 2);
    m.topLeftCorner(nd, nd) = a;
    m.block(0, nd, nd, 1) = beta;
    m(nd, nd + 1) = 1.0;
    const MatrixXd phi = (m * dt).exp();

    Reference ref;
    auto record = [&](double t, const VectorXd& xd, double u) {
        std::vector<double> x(sys.size(), 0.0);
        for (std::size_t i = 0; i < dyn.size(); ++i) x[dyn[i]] = xd(i);
        if (!alg.empty()) {
            const VectorXd xa = gaa_inv_ba * u - gaa_inv_gad * xd;
            for (std::size_t i = 0; i < alg.size(); ++i) x[alg[i]] = xa(i);
        }
        ref.time.push_back(t);
        ref.node_voltages.push_back(sys.node_voltages(x));
    };

    // Start from the DC point at u(0).
    const double u0 = stim.value(0.0);
    VectorXd xd = VectorXd::Zero(nd);
    {
        const VectorXd x = g.fullPivLu().solve(VectorXd(bu * u0));
        for (std::size_t i = 0; i < dyn.size(); ++i) xd(i) = x(dyn[i]);
    }
    record(0.0, xd, u0);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t0 = static_cast<double>(k - 1) * dt;
        const double t1 = static_cast<double>(k) * dt;
        const double ua = stim.value(t0);
        const double ub = stim.value(t1);
        VectorXd z(nd + 2);
        z << xd, ua, (ub - ua) / dt;
        xd = (phi * z).head(nd);
        record(t1, xd, ub);
    }
    return ref;
}

}  // namespace xtalk::oracle

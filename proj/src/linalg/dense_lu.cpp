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

#include "xtalk/linalg/dense_lu.hpp"

#include "xtalk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace xtalk::linalg {

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

void multiply(const DenseMatrix& a, std::span<const double> x, std::span<double> y,
              const simd::KernelTable& kernels) {
    kernels.gemv(a.data().data(), a.rows(), a.cols(), a.cols(), x.data(), y.data());
}

LuFactorization::LuFactorization(DenseMatrix a, const simd::KernelTable& kernels)
    : lu_(std::move(a)), perm_(lu_.rows()), kernels_(&kernels), work_(lu_.rows()) {
    const std::size_t n = lu_.rows();
    if (lu_.cols() != n) throw SolverError("LU factorization needs a square matrix");
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    const double tol = std::max(lu_.max_abs(), 1.0) * std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max<std::size_t>(n, 1));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (!(best > tol)) {
            throw SolverError(fmt::format("matrix is singular: no pivot for column {}", k));
        }
        if (piv != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(piv).begin());
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv = 1.0 / lu_(k, k);
        const auto pivot_tail = lu_.row(k).subspan(k + 1);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = lu_(i, k) * inv;
            lu_(i, k) = l;
            if (l != 0.0) kernels_->axpy(-l, pivot_tail.data(), lu_.row(i).data() + k + 1, pivot_tail.size());
        }
    }
}

void LuFactorization::solve(std::span<double> b) const {
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) work_[i] = b[perm_[i]];
    for (std::size_t i = 1; i < n; ++i) {
        work_[i] -= kernels_->dot(lu_.row(i).data(), work_.data(), i);
    }
    for (std::size_t i = n; i-- > 0;) {
        const auto r = lu_.row(i);
        const double s = kernels_->dot(r.data() + i + 1, work_.data() + i + 1, n - i - 1);
        work_[i] = (work_[i] - s) / r[i];
    }
    std::copy(work_.begin(), work_.end(), b.begin());
}

double LuFactorization::min_pivot() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lu_.rows(); ++i) m = std::min(m, std::abs(lu_(i, i)));
    return m;
}

}  // namespace xtalk::linalg

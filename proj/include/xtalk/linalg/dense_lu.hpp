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

#include "xtalk/simd/kernels.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace xtalk::linalg {

// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// y = A x
void multiply(const DenseMatrix& a, std::span<const double> x, std::span<double> y,
              const simd::KernelTable& kernels = simd::active());

// LU with partial pivoting, PA = LU. Factored once, solved many times.
class LuFactorization {
public:
    // Throws SolverError naming the first column without a usable pivot.
    explicit LuFactorization(DenseMatrix a, const simd::KernelTable& kernels = simd::active());

    std::size_t size() const { return lu_.rows(); }

    // Solves A x = b in place.
    void solve(std::span<double> b) const;

    // Smallest pivot magnitude.
    double min_pivot() const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    const simd::KernelTable* kernels_;
    mutable std::vector<double> work_;
};

}  // namespace xtalk::linalg

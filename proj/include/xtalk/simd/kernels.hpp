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

// Dense double-precision inner loops used by the LU factorization and the
// transient stepper. Every backend computes the same quantities; only the
// summation order differs (vector backends accumulate in lanes).

#include <cstddef>
#include <span>
#include <string_view>

namespace xtalk::simd {

enum class Backend { scalar, avx2, neon };

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view name);  // throws std::invalid_argument

struct KernelTable {
    Backend backend;
    // sum a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y = A x, A row-major with the given row stride
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols, std::size_t stride,
                 const double* x, double* y);
};

// Compiled in and supported by the running CPU.
bool available(Backend backend);
Backend best_available();

// Throws std::invalid_argument when the backend is unavailable.
const KernelTable& table(Backend backend);

// Process-wide selection, defaults to best_available().
const KernelTable& active();
void select(Backend backend);

inline double dot(std::span<const double> a, std::span<const double> b, const KernelTable& k = active()) {
    return k.dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y, const KernelTable& k = active()) {
    k.axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

}  // namespace xtalk::simd

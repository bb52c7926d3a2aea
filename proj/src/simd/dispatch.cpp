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

#include "tables.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace xtalk::simd {

std::string_view to_string(Backend backend) {
    switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "?";
}

Backend backend_from_string(std::string_view name) {
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    if (name == "neon") return Backend::neon;
    throw std::invalid_argument("unknown SIMD backend '" + std::string(name) + "'");
}

bool available(Backend backend) {
    switch (backend) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(XTALK_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Backend::neon:
#if defined(XTALK_WITH_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Backend best_available() {
    if (available(Backend::avx2)) return Backend::avx2;
    if (available(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

const KernelTable& table(Backend backend) {
    if (!available(backend)) {
        throw std::invalid_argument("SIMD backend '" + std::string(to_string(backend)) + "' is not available");
    }
    switch (backend) {
#if defined(XTALK_WITH_AVX2)
    case Backend::avx2: return detail::avx2_table();
#endif
#if defined(XTALK_WITH_NEON)
    case Backend::neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
    }
}

namespace {

std::atomic<const KernelTable*>& active_slot() {
    static std::atomic<const KernelTable*> slot{&table(best_available())};
    return slot;
}

}  // namespace

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void select(Backend backend) { active_slot().store(&table(backend), std::memory_order_release); }

}  // namespace xtalk::simd

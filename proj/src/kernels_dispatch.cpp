// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The fdmimo authors
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

#include "fdmimo/kernels.hpp"

#include "fdmimo/errors.hpp"

#include <atomic>

namespace fdmimo::kernels {

namespace {

constexpr KernelTable kScalarTable{&scalar::gemm, &scalar::gemm_adjoint, &scalar::row_norms_sq,
                                   &scalar::scale_add};

#if defined(FDMIMO_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::gemm, &avx2::gemm_adjoint, &avx2::row_norms_sq, &avx2::scale_add};
#endif

bool cpu_has_avx2() noexcept {
#if defined(FDMIMO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<const KernelTable*>& active_slot() noexcept {
    static std::atomic<const KernelTable*> slot{&table(best_available())};
    return slot;
}

} // namespace

bool available(Backend backend) noexcept {
    switch (backend) {
    case Backend::scalar:
        return true;
    case Backend::avx2: {
        static const bool has = cpu_has_avx2();
        return has;
    }
    }
    return false;
}

Backend best_available() noexcept { return available(Backend::avx2) ? Backend::avx2 : Backend::scalar; }

const KernelTable& table(Backend backend) {
    if (!available(backend))
        throw ContractError("kernel backend '" + std::string(name(backend)) + "' is not available on this CPU");
#if defined(FDMIMO_HAVE_AVX2)
    if (backend == Backend::avx2)
        return kAvx2Table;
#endif
    return kScalarTable;
}

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_relaxed); }

Backend active_backend() noexcept {
#if defined(FDMIMO_HAVE_AVX2)
    if (&active() == &kAvx2Table)
        return Backend::avx2;
#endif
    return Backend::scalar;
}

void set_backend(Backend backend) { active_slot().store(&table(backend), std::memory_order_relaxed); }

std::string_view name(Backend backend) noexcept {
    switch (backend) {
    case Backend::scalar:
        return "scalar";
    case Backend::avx2:
        return "avx2";
    }
    return "unknown";
}

} // namespace fdmimo::kernels

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

#ifndef FDMIMO_KERNELS_HPP
#define FDMIMO_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string_view>

// Dense complex inner loops used by ComplexMatrix. Every kernel has a scalar
// reference implementation; SIMD variants must agree with it to rounding
// (see tests/test_kernels.cpp). All matrices are row-major and unpadded.

namespace fdmimo::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

struct KernelTable {
    // c[m x n] = a[m x k] * b[k x n]
    void (*gemm)(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
    // c[m x n] = a[m x k] * b[n x k]^H
    void (*gemm_adjoint)(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
    // out[i] = sum_j |a[i][j]|^2 for an m x n matrix
    void (*row_norms_sq)(const cplx* a, double* out, std::size_t m, std::size_t n);
    // out[i] = alpha * x[i] + beta * y[i]; out may alias x or y
    void (*scale_add)(double alpha, const cplx* x, double beta, const cplx* y, cplx* out, std::size_t n);
};

namespace scalar {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
void gemm_adjoint(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
void row_norms_sq(const cplx* a, double* out, std::size_t m, std::size_t n);
void scale_add(double alpha, const cplx* x, double beta, const cplx* y, cplx* out, std::size_t n);
} // namespace scalar

#if defined(FDMIMO_HAVE_AVX2)
namespace avx2 {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
void gemm_adjoint(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
void row_norms_sq(const cplx* a, double* out, std::size_t m, std::size_t n);
void scale_add(double alpha, const cplx* x, double beta, const cplx* y, cplx* out, std::size_t n);
} // namespace avx2
#endif

// True when the backend was compiled in and the running CPU supports it.
bool available(Backend backend) noexcept;

// Best available backend on this CPU; chosen at first use.
Backend best_available() noexcept;

const KernelTable& table(Backend backend);

// Kernel table currently used by ComplexMatrix operations.
const KernelTable& active() noexcept;
Backend active_backend() noexcept;

// Select the backend for subsequent operations (process-wide). Throws
// ContractError if the backend is not available.
void set_backend(Backend backend);

std::string_view name(Backend backend) noexcept;

} // namespace fdmimo::kernels

#endif

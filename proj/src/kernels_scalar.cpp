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

namespace fdmimo::kernels::scalar {

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j)
            crow[j] = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = a[i * k + l];
            const cplx* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j)
                crow[j] += ail * brow[j];
        }
    }
}

void gemm_adjoint(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx* brow = b + j * k;
            double re = 0.0, im = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                re += arow[l].real() * brow[l].real() + arow[l].imag() * brow[l].imag();
                im += arow[l].imag() * brow[l].real() - arow[l].real() * brow[l].imag();
            }
            c[i * n + j] = {re, im};
        }
    }
}

void row_norms_sq(const cplx* a, double* out, std::size_t m, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += std::norm(a[i * n + j]);
        out[i] = acc;
    }
}

void scale_add(double alpha, const cplx* x, double beta, const cplx* y, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = alpha * x[i] + beta * y[i];
}

} // namespace fdmimo::kernels::scalar

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

#include <immintrin.h>

namespace fdmimo::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

} // namespace

// Two complex values per register: [re0, im0, re1, im1].
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    const auto* bd = reinterpret_cast<const double*>(b);
    auto* cd = reinterpret_cast<double*>(c);
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        for (std::size_t j = 0; j < n2; j += 2) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t l = 0; l < k; ++l) {
                const __m256d ar = _mm256_set1_pd(arow[l].real());
                const __m256d ai = _mm256_set1_pd(arow[l].imag());
                const __m256d bv = _mm256_loadu_pd(bd + 2 * (l * n + j));
                const __m256d bsw = _mm256_permute_pd(bv, 0b0101);
                acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, bv, _mm256_mul_pd(ai, bsw)));
            }
            _mm256_storeu_pd(cd + 2 * (i * n + j), acc);
        }
        if (n2 != n) {
            cplx acc = 0.0;
            for (std::size_t l = 0; l < k; ++l)
                acc += arow[l] * b[l * n + n2];
            c[i * n + n2] = acc;
        }
    }
}

void gemm_adjoint(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    const std::size_t k2 = k & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        const auto* ad = reinterpret_cast<const double*>(a + i * k);
        for (std::size_t j = 0; j < n; ++j) {
            const auto* bd = reinterpret_cast<const double*>(b + j * k);
            __m256d prod = _mm256_setzero_pd();  // [ar*br, ai*bi, ...]
            __m256d cross = _mm256_setzero_pd(); // [ar*bi, ai*br, ...]
            for (std::size_t l = 0; l < k2; l += 2) {
                const __m256d av = _mm256_loadu_pd(ad + 2 * l);
                const __m256d bv = _mm256_loadu_pd(bd + 2 * l);
                prod = _mm256_fmadd_pd(av, bv, prod);
                cross = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), cross);
            }
            alignas(32) double x[4];
            _mm256_store_pd(x, cross);
            double re = hsum(prod);
            double im = (x[1] - x[0]) + (x[3] - x[2]);
            if (k2 != k) {
                const cplx av = a[i * k + k2];
                const cplx bv = b[j * k + k2];
                re += av.real() * bv.real() + av.imag() * bv.imag();
                im += av.imag() * bv.real() - av.real() * bv.imag();
            }
            c[i * n + j] = {re, im};
        }
    }
}

void row_norms_sq(const cplx* a, double* out, std::size_t m, std::size_t n) {
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        const auto* ad = reinterpret_cast<const double*>(a + i * n);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < n2; j += 2) {
            const __m256d v = _mm256_loadu_pd(ad + 2 * j);
            acc = _mm256_fmadd_pd(v, v, acc);
        }
        double total = hsum(acc);
        if (n2 != n)
            total += std::norm(a[i * n + n2]);
        out[i] = total;
    }
}

void scale_add(double alpha, const cplx* x, double beta, const cplx* y, cplx* out, std::size_t n) {
    const auto* xd = reinterpret_cast<const double*>(x);
    const auto* yd = reinterpret_cast<const double*>(y);
    auto* od = reinterpret_cast<double*>(out);
    const std::size_t total = 2 * n;
    const std::size_t blocked = total & ~std::size_t{3};
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(beta);
    for (std::size_t i = 0; i < blocked; i += 4) {
        const __m256d xv = _mm256_loadu_pd(xd + i);
        const __m256d yv = _mm256_loadu_pd(yd + i);
        _mm256_storeu_pd(od + i, _mm256_fmadd_pd(va, xv, _mm256_mul_pd(vb, yv)));
    }
    for (std::size_t i = blocked; i < total; ++i)
        od[i] = alpha * xd[i] + beta * yd[i];
}

} // namespace fdmimo::kernels::avx2

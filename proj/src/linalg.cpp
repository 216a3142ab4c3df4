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

#include "fdmimo/errors.hpp"
#include "fdmimo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fdmimo::numerics {

namespace {

constexpr int kMaxSweeps = 80;
constexpr double kOrthogonalityTol = 1e-15;

using Column = std::vector<cplx>;

double norm_sq(const Column& v) {
    double s = 0.0;
    for (const cplx& x : v)
        s += std::norm(x);
    return s;
}

cplx inner(const Column& a, const Column& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

// Replaces `v` with a unit vector orthogonal to all of `basis` (Gram-Schmidt
// against the canonical vectors until one survives).
Column complete_basis(const std::vector<Column>& basis, std::size_t dim) {
    for (std::size_t e = 0; e < dim; ++e) {
        Column v(dim, 0.0);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Column& b : basis) {
                const cplx proj = inner(b, v);
                for (std::size_t i = 0; i < dim; ++i)
                    v[i] -= proj * b[i];
            }
        const double n = std::sqrt(norm_sq(v));
        if (n > 1e-8) {
            for (cplx& x : v)
                x /= n;
            return v;
        }
    }
    throw NumericalError("svd: failed to complete an orthonormal basis");
}

Svd jacobi_tall(const ComplexMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();

    std::vector<Column> a(n, Column(rows));
    std::vector<Column> v(n, Column(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < rows; ++i)
            a[j][i] = m(i, j);
        v[j][j] = 1.0;
    }

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = norm_sq(a[p]);
                const double beta = norm_sq(a[q]);
                const cplx gamma = inner(a[p], a[q]);
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= kOrthogonalityTol * std::sqrt(alpha * beta))
                    continue;
                converged = false;

                // Rotate a_p against b = a_q * conj(phase) so the Gram entry is real.
                const cplx phase_conj = std::conj(gamma / g);
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const cplx ap = a[p][i];
                    const cplx bq = a[q][i] * phase_conj;
                    a[p][i] = c * ap - s * bq;
                    a[q][i] = s * ap + c * bq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vp = v[p][i];
                    const cplx vq = v[q][i] * phase_conj;
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged)
        throw NumericalError("svd: no convergence after " + std::to_string(kMaxSweeps) + " Jacobi sweeps");

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j)
        sigma[j] = std::sqrt(norm_sq(a[j]));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    Svd out{ComplexMatrix(rows, n), std::vector<double>(n), ComplexMatrix(n, n)};
    std::vector<Column> u_cols;
    u_cols.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.s[k] = sigma[j];
        Column col(rows);
        if (sigma[j] > 0.0 && std::isfinite(1.0 / sigma[j])) {
            for (std::size_t i = 0; i < rows; ++i)
                col[i] = a[j][i] / sigma[j];
        } else {
            col = complete_basis(u_cols, rows);
        }
        u_cols.push_back(col);
        for (std::size_t i = 0; i < rows; ++i)
            out.u(i, k) = col[i];
        for (std::size_t i = 0; i < n; ++i)
            out.vh(k, i) = std::conj(v[j][i]);
    }
    return out;
}

} // namespace

Svd svd(const ComplexMatrix& m) {
    if (m.empty())
        throw ContractError("svd: empty matrix");
    if (!all_finite(m))
        throw ContractError("svd: matrix has non-finite entries");
    if (m.rows() >= m.cols())
        return jacobi_tall(m);
    // M^H = U' S V'^H  =>  M = V' S U'^H
    Svd t = jacobi_tall(adjoint(m));
    return {adjoint(t.vh), std::move(t.s), adjoint(t.u)};
}

ComplexMatrix cholesky(const ComplexMatrix& a) {
    if (!a.is_square())
        throw ContractError("cholesky: matrix is not square");
    const std::size_t n = a.rows();
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        if (!(d > 0.0) || !std::isfinite(d))
            throw DomainError("cholesky: non-positive pivot at index " + std::to_string(j));
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

ComplexMatrix forward_substitute(const ComplexMatrix& lower, const ComplexMatrix& b) {
    const std::size_t n = lower.rows();
    if (b.rows() != n)
        throw ContractError("forward_substitute: row count mismatch");
    ComplexMatrix x = b;
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = x(i, c);
            for (std::size_t k = 0; k < i; ++k)
                s -= lower(i, k) * x(k, c);
            x(i, c) = s / lower(i, i);
        }
    return x;
}

ComplexMatrix hermitian_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || a.rows() != b.rows())
        throw ContractError("hermitian_solve: A must be square with as many rows as B");
    ComplexMatrix l;
    try {
        l = cholesky(a);
    } catch (const DomainError& e) {
        throw NearSingularError(std::string("hermitian_solve: ") + e.what());
    }
    double dmin = l(0, 0).real();
    double dmax = dmin;
    for (std::size_t i = 1; i < l.rows(); ++i) {
        dmin = std::min(dmin, l(i, i).real());
        dmax = std::max(dmax, l(i, i).real());
    }
    const double cond_estimate = (dmax / dmin) * (dmax / dmin);
    if (!(cond_estimate <= kNearSingularCondition))
        throw NearSingularError("hermitian_solve: condition estimate " + std::to_string(cond_estimate) +
                                " exceeds 1e12");

    ComplexMatrix y = forward_substitute(l, b);
    // Back substitution with L^H.
    const std::size_t n = l.rows();
    for (std::size_t c = 0; c < y.cols(); ++c)
        for (std::size_t ii = n; ii-- > 0;) {
            cplx s = y(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k)
                s -= std::conj(l(k, ii)) * y(k, c);
            y(ii, c) = s / l(ii, ii);
        }
    return y;
}

double log_det_hermitian(const ComplexMatrix& a) {
    const ComplexMatrix l = cholesky(a);
    double total = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i)
        total += std::log2(l(i, i).real());
    return 2.0 * total;
}

} // namespace fdmimo::numerics

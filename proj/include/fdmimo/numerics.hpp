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

#ifndef FDMIMO_NUMERICS_HPP
#define FDMIMO_NUMERICS_HPP

#include "fdmimo/complex_matrix.hpp"

#include <vector>

namespace fdmimo::numerics {

/// Thin singular value decomposition M = U * diag(s) * Vh.
///
/// For an m x n input with p = min(m, n): U is m x p with orthonormal columns,
/// s holds p values sorted descending, Vh is p x n with orthonormal rows. A
/// square input therefore yields the full set of right-singular vectors.
struct Svd {
    ComplexMatrix u;
    std::vector<double> s;
    ComplexMatrix vh;
};

/// One-sided (Hestenes) Jacobi SVD. Throws ContractError on non-finite input
/// and NumericalError if the sweeps do not converge.
Svd svd(const ComplexMatrix& m);

/// Lower-triangular L with A = L * L^H. Throws DomainError on a non-positive pivot.
ComplexMatrix cholesky(const ComplexMatrix& a);

/// Solves A X = B for Hermitian positive definite A. Throws NearSingularError
/// when the Cholesky-based condition estimate exceeds 1e12 or A is not PD.
ComplexMatrix hermitian_solve(const ComplexMatrix& a, const ComplexMatrix& b);

/// log2 det(A) for Hermitian positive definite A, via Cholesky.
double log_det_hermitian(const ComplexMatrix& a);

// L^{-1} B for lower-triangular L.
ComplexMatrix forward_substitute(const ComplexMatrix& lower, const ComplexMatrix& b);

/// Bessel function of the first kind, order zero. |error| <= 1e-8 for |x| <= 50.
double bessel_j0(double x);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);
double db_to_linear(double db);
double linear_to_db(double linear);

inline constexpr double kNearSingularCondition = 1e12;

} // namespace fdmimo::numerics

#endif

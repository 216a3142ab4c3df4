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

#include "fdmimo/rate.hpp"

#include "fdmimo/errors.hpp"
#include "fdmimo/numerics.hpp"

#include <algorithm>

namespace fdmimo::link {

ComplexMatrix interference_covariance(const ComplexMatrix& residual_ue_si, const ComplexMatrix& h_in, double pilot_power,
                                      double tau_dl_sq, double p_b, double l_k, const ComplexMatrix& v_b,
                                      double sigma_k_sq) {
    const std::size_t k = h_in.rows();
    if (!h_in.is_square() || residual_ue_si.rows() != k || residual_ue_si.cols() != k)
        throw ContractError("interference_covariance: UE-side matrices must be K x K");
    const double leakage = tau_dl_sq * p_b * l_k * frobenius_norm_sq(v_b);
    ComplexMatrix sigma = (sigma_k_sq + leakage) * ComplexMatrix::identity(k);
    sigma += pilot_power * multiply_adjoint(residual_ue_si, residual_ue_si);
    sigma += pilot_power * multiply_adjoint(h_in, h_in);
    return sigma;
}

double downlink_rate(const ComplexMatrix& h_hat, const ComplexMatrix& v_b, double tau_dl_sq, double p_b,
                     const ComplexMatrix& sigma) {
    const std::size_t k = h_hat.rows();
    if (!sigma.is_square() || sigma.rows() != k || h_hat.cols() != v_b.rows())
        throw ContractError("downlink_rate: shape mismatch");
    const ComplexMatrix lower = numerics::cholesky(sigma);
    const double gain = std::max(0.0, 1.0 - tau_dl_sq) * p_b;
    if (gain == 0.0)
        return 0.0;
    const ComplexMatrix a = numerics::forward_substitute(lower, h_hat * v_b);
    ComplexMatrix m = gain * multiply_adjoint(a, a);
    for (std::size_t i = 0; i < k; ++i)
        m(i, i) += 1.0;
    // Symmetrize against rounding before the factorization.
    const ComplexMatrix sym = 0.5 * (m + adjoint(m));
    return std::max(0.0, numerics::log_det_hermitian(sym));
}

} // namespace fdmimo::link

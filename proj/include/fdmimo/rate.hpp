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

#ifndef FDMIMO_RATE_HPP
#define FDMIMO_RATE_HPP

#include "fdmimo/complex_matrix.hpp"

namespace fdmimo::link {

/// Per-UE interference-plus-noise covariance (K x K):
///
///   sigma_K^2 I + P_s R R^H + P_s H_IN H_IN^H + tau^2 P_b l_K ||V_b||_F^2 I
///
/// with R the residual UE SI after analog and digital cancellation and P_s the
/// per-UE pilot power (pilots are modeled by their ensemble covariance P_s I).
ComplexMatrix interference_covariance(const ComplexMatrix& residual_ue_si, const ComplexMatrix& h_in, double pilot_power,
                                      double tau_dl_sq, double p_b, double l_k, const ComplexMatrix& v_b,
                                      double sigma_k_sq);

/// log2 det(I + (1 - tau^2) P_b H_hat V V^H H_hat^H Sigma^{-1}), evaluated as
/// log2 det(I + c A A^H) with A = L^{-1} H_hat V and Sigma = L L^H.
/// Returns 0 for tau^2 >= 1. Throws DomainError if Sigma is not PD.
double downlink_rate(const ComplexMatrix& h_hat, const ComplexMatrix& v_b, double tau_dl_sq, double p_b,
                     const ComplexMatrix& sigma);

} // namespace fdmimo::link

#endif

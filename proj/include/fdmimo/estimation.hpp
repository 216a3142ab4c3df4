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

#ifndef FDMIMO_ESTIMATION_HPP
#define FDMIMO_ESTIMATION_HPP

#include "fdmimo/complex_matrix.hpp"
#include "fdmimo/random.hpp"

#include <cstddef>

namespace fdmimo::estimation {

/// Orthogonal UL pilots: S_K * S_K^H = length * per_ue_power * I.
struct TrainingBlock {
    ComplexMatrix s_k; // K x T
    double per_ue_power = 0.0;
    std::size_t length = 0;
};

/// Rows 0..K-1 of a T-point DFT basis scaled by sqrt(p_k).
/// Throws InfeasiblePilotError when t < k.
TrainingBlock make_training(std::size_t k, std::size_t t, double p_k);

/// Training received at the BS after analog and digital cancellation:
///
///   Y = rho H^T S_K + sqrt((1 - rho^2) P_k) E_UL + residual_si V_prev S_b + N
///
/// h is the K x N_b DL channel of the slot being estimated, E_UL is N_b x T
/// white CN(0, l_k) (CSI delay error), S_b is CN(0, p_b) per stream and symbol,
/// N is CN(0, sigma_b_sq). Returns N_b x T.
ComplexMatrix receive_training(const ComplexMatrix& h, double rho, double l_k, const ComplexMatrix& residual_si,
                               const ComplexMatrix& v_prev, const TrainingBlock& training, double p_b,
                               double sigma_b_sq, RandomStream& rng);

/// Scalar LMMSE gain rho * l_K / (sigma_b^2 + sigma_r^2 + (1 - rho^2) P_rx + rho^2 T P_rx)
/// applied to Y S_K^H. Throws DegenerateConfigError on a zero denominator.
double mmse_gain(double rho, double sigma_b_sq, double sigma_r_sq, double p_rx, std::size_t t, double l_k);

/// UL estimate (N_b x K) of H^T. p_rx is the received pilot power P_k * l_K.
ComplexMatrix mmse_estimate(const ComplexMatrix& y, const TrainingBlock& training, double rho, double sigma_b_sq,
                            double sigma_r_sq, double p_rx);

/// Normalized MSE of the estimate, in [0, 1].
double compute_mse(double rho, double sigma_b_sq, double sigma_r_sq, double p_rx, std::size_t t);

/// p_b * ||residual_si * v_prev||_F^2 / n_b.
double residual_si_power(const ComplexMatrix& residual_si, const ComplexMatrix& v_prev, double p_b, std::size_t n_b);

struct EstimateReport {
    ComplexMatrix h_hat; // K x N_b, scaled to unit-variance Gauss-Markov form
    double tau_dl_sq = 1.0;
    double sigma_r_sq = 0.0;
    double rho = 0.0;
};

/// Scales an LMMSE DL estimate by 1 / sqrt(1 - tau^2) so that
/// H = sqrt(1 - tau^2) H_hat + tau E holds with E, H_hat of variance l_K.
ComplexMatrix gauss_markov_estimate(const ComplexMatrix& h_lmmse, double tau_dl_sq);

} // namespace fdmimo::estimation

#endif

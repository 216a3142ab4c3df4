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

#include "fdmimo/estimation.hpp"

#include "fdmimo/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fdmimo::estimation {

TrainingBlock make_training(std::size_t k, std::size_t t, double p_k) {
    if (k == 0)
        throw ContractError("make_training: need at least one user");
    if (t < k)
        throw InfeasiblePilotError("make_training: " + std::to_string(t) + " pilot symbols cannot separate " +
                                   std::to_string(k) + " users");
    if (!(p_k >= 0.0))
        throw ContractError("make_training: pilot power must be nonnegative");
    TrainingBlock block{ComplexMatrix(k, t), p_k, t};
    const double amp = std::sqrt(p_k);
    const double td = static_cast<double>(t);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < t; ++c) {
            // Reduce r*c mod t first so the angle stays accurate for long blocks.
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((r * c) % t) / td;
            block.s_k(r, c) = std::polar(amp, phase);
        }
    return block;
}

ComplexMatrix receive_training(const ComplexMatrix& h, double rho, double l_k, const ComplexMatrix& residual_si,
                               const ComplexMatrix& v_prev, const TrainingBlock& training, double p_b,
                               double sigma_b_sq, RandomStream& rng) {
    const std::size_t n_b = h.cols();
    const std::size_t t = training.length;
    if (training.s_k.rows() != h.rows() || training.s_k.cols() != t)
        throw ContractError("receive_training: pilot block does not match the channel");
    if (residual_si.rows() != n_b || residual_si.cols() != n_b || v_prev.rows() != n_b)
        throw ContractError("receive_training: SI residual or precoder shape mismatch");

    ComplexMatrix y = rho * (transpose(h) * training.s_k);

    const double delay_var = (1.0 - rho * rho) * training.per_ue_power * l_k;
    ComplexMatrix s_b(v_prev.cols(), t);
    for (std::size_t r = 0; r < s_b.rows(); ++r)
        for (std::size_t c = 0; c < t; ++c)
            s_b(r, c) = rng.complex_normal(p_b);
    y += residual_si * (v_prev * s_b);

    for (std::size_t r = 0; r < n_b; ++r)
        for (std::size_t c = 0; c < t; ++c) {
            cplx extra = rng.complex_normal(sigma_b_sq);
            if (delay_var > 0.0)
                extra += rng.complex_normal(delay_var);
            y(r, c) += extra;
        }
    return y;
}

namespace {

double estimator_denominator(double rho, double sigma_b_sq, double sigma_r_sq, double p_rx, std::size_t t) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ContractError("estimation: rho must lie in [0, 1]");
    if (!(sigma_b_sq >= 0.0) || !(sigma_r_sq >= 0.0) || !(p_rx >= 0.0))
        throw ContractError("estimation: powers must be nonnegative");
    const double den = sigma_b_sq + sigma_r_sq + (1.0 - rho * rho) * p_rx + rho * rho * static_cast<double>(t) * p_rx;
    if (!(den > 0.0))
        throw DegenerateConfigError("estimation: noise, residual SI and pilot power are all zero");
    return den;
}

} // namespace

double mmse_gain(double rho, double sigma_b_sq, double sigma_r_sq, double p_rx, std::size_t t, double l_k) {
    return rho * l_k / estimator_denominator(rho, sigma_b_sq, sigma_r_sq, p_rx, t);
}

ComplexMatrix mmse_estimate(const ComplexMatrix& y, const TrainingBlock& training, double rho, double sigma_b_sq,
                            double sigma_r_sq, double p_rx) {
    if (y.cols() != training.length)
        throw ContractError("mmse_estimate: received block length differs from the pilot length");
    if (!(training.per_ue_power > 0.0))
        throw DegenerateConfigError("mmse_estimate: pilot power is zero");
    const double l_k = p_rx / training.per_ue_power;
    const double gain = mmse_gain(rho, sigma_b_sq, sigma_r_sq, p_rx, training.length, l_k);
    return gain * multiply_adjoint(y, training.s_k);
}

double compute_mse(double rho, double sigma_b_sq, double sigma_r_sq, double p_rx, std::size_t t) {
    const double den = estimator_denominator(rho, sigma_b_sq, sigma_r_sq, p_rx, t);
    const double num = sigma_b_sq + sigma_r_sq + (1.0 - rho * rho) * p_rx;
    return num / den;
}

double residual_si_power(const ComplexMatrix& residual_si, const ComplexMatrix& v_prev, double p_b, std::size_t n_b) {
    if (residual_si.cols() != v_prev.rows())
        throw ContractError("residual_si_power: shape mismatch");
    if (n_b == 0)
        throw ContractError("residual_si_power: n_b must be positive");
    return p_b * frobenius_norm_sq(residual_si * v_prev) / static_cast<double>(n_b);
}

ComplexMatrix gauss_markov_estimate(const ComplexMatrix& h_lmmse, double tau_dl_sq) {
    if (!(tau_dl_sq < 1.0))
        return ComplexMatrix(h_lmmse.rows(), h_lmmse.cols());
    return (1.0 / std::sqrt(1.0 - tau_dl_sq)) * h_lmmse;
}

} // namespace fdmimo::estimation

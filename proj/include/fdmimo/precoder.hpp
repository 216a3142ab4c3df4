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

#ifndef FDMIMO_PRECODER_HPP
#define FDMIMO_PRECODER_HPP

#include "fdmimo/cancellation.hpp"
#include "fdmimo/complex_matrix.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace fdmimo::precoder {

struct PrecoderDesign {
    ComplexMatrix v_b;                  // N_b x streams, ||v_b||_F = 1
    std::size_t alpha = 0;              // retained subspace dimension
    std::vector<std::size_t> permutation; // output row -> input user, from the sort step
    std::vector<std::size_t> served;    // users receiving a stream, in stream order
    bool feasible = false;
};

/// G = beta Z^H (Z Z^H)^{-1}, beta = 1 / sqrt(tr((Z Z^H)^{-1})), so that
/// Z G = beta I and tr(G G^H) = 1. Throws NearSingularError when Z Z^H is
/// ill-conditioned and ContractError when Z has more rows than columns.
ComplexMatrix zf_precoder(const ComplexMatrix& z);

struct SortedRows {
    ComplexMatrix sorted;
    std::vector<std::size_t> permutation; // output row -> input row (0-based)
};

/// Rows by nonincreasing Euclidean norm; ties keep input order.
SortedRows sort_rows_desc(const ComplexMatrix& m);

struct DesignProblem {
    ComplexMatrix h_hat;    // K x N_b DL estimate
    ComplexMatrix h_bb_hat; // N_b x N_b
    ComplexMatrix h_kk_hat; // K x K diagonal
    std::size_t taps = 0;
    double p_b = 0.0;
    double p_k = 0.0;
    double lambda_b = std::numeric_limits<double>::infinity();
    double lambda_k = std::numeric_limits<double>::infinity();
    std::size_t m_b = 0;
    cancellation::Quantizer quantizer = cancellation::QuantizerSpec{};

    // Objective used to rank canceller layouts: rate with
    // Sigma = interference_floor * I and prefactor (1 - tau_dl_sq).
    double tau_dl_sq = 0.0;
    double interference_floor = 1.0;
    // false: only the greedy magnitude layout is tried.
    bool search_layouts = true;

    void validate() const;
};

struct JointDesign {
    PrecoderDesign precoder;
    cancellation::CancellerState cancellers;
    double objective = 0.0;
};

/// Precoder search for a fixed BS residual (H_bb_hat + C_b) and UE residual
/// (H_KK_hat + C_K): alpha runs N_b..2 serving min(m_b, alpha) users, then the
/// single weakest right-singular direction. Empty when every candidate
/// violates a saturation threshold.
std::optional<PrecoderDesign> design_for_canceller(const ComplexMatrix& h_hat, const ComplexMatrix& bs_residual,
                                                   const ComplexMatrix& ue_residual, double p_b, double p_k,
                                                   double lambda_b, double lambda_k, std::size_t m_b);

/// Joint precoder and canceller design over the allowable analog layouts.
/// Empty when no layout admits a feasible precoder.
std::optional<JointDesign> design(const DesignProblem& problem);

/// Rate-based score of a design under the problem's objective statistics.
double design_objective(const DesignProblem& problem, const PrecoderDesign& d);

} // namespace fdmimo::precoder

#endif

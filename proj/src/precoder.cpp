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

#include "fdmimo/precoder.hpp"

#include "fdmimo/errors.hpp"
#include "fdmimo/numerics.hpp"
#include "fdmimo/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fdmimo::precoder {

namespace cn = cancellation;

ComplexMatrix zf_precoder(const ComplexMatrix& z) {
    if (z.rows() == 0 || z.rows() > z.cols())
        throw ContractError("zf_precoder: need 1 <= rows <= cols");
    const ComplexMatrix gram = multiply_adjoint(z, z);
    const ComplexMatrix inv = numerics::hermitian_solve(gram, ComplexMatrix::identity(z.rows()));
    const double tr = trace(inv).real();
    if (!(tr > 0.0) || !std::isfinite(tr))
        throw NearSingularError("zf_precoder: Gram inverse has no positive trace");
    return (1.0 / std::sqrt(tr)) * (adjoint(z) * inv);
}

SortedRows sort_rows_desc(const ComplexMatrix& m) {
    const std::vector<double> norms = row_norms_sq(m);
    std::vector<std::size_t> perm(m.rows());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    return {select_rows(m, perm), perm};
}

void DesignProblem::validate() const {
    const std::size_t k = h_hat.rows();
    const std::size_t n_b = h_hat.cols();
    if (k == 0 || n_b == 0)
        throw ContractError("design: empty DL estimate");
    if (h_bb_hat.rows() != n_b || h_bb_hat.cols() != n_b)
        throw ContractError("design: BS SI estimate must be N_b x N_b");
    if (h_kk_hat.rows() != k || h_kk_hat.cols() != k)
        throw ContractError("design: UE SI estimate must be K x K");
    if (m_b < 1 || m_b > std::min(k, n_b))
        throw ContractError("design: m_b must lie in [1, min(K, N_b)]");
    if (taps > n_b * n_b)
        throw ContractError("design: tap budget exceeds N_b^2");
    if (!(p_b > 0.0) || !(p_k > 0.0) || !(lambda_b > 0.0) || !(lambda_k > 0.0))
        throw ContractError("design: powers and thresholds must be positive");
    if (!(interference_floor > 0.0))
        throw ContractError("design: interference floor must be positive");
}

namespace {

bool within(const std::vector<double>& powers, double limit) {
    return std::all_of(powers.begin(), powers.end(), [limit](double p) { return p <= limit; });
}

} // namespace

std::optional<PrecoderDesign> design_for_canceller(const ComplexMatrix& h_hat, const ComplexMatrix& bs_residual,
                                                   const ComplexMatrix& ue_residual, double p_b, double p_k,
                                                   double lambda_b, double lambda_k, std::size_t m_b) {
    const std::size_t k = h_hat.rows();
    const std::size_t n_b = h_hat.cols();

    // UE side does not depend on the precoder.
    if (!within(cn::per_chain_residual_powers(ue_residual, ComplexMatrix::identity(k), p_k), lambda_k))
        return std::nullopt;

    const numerics::Svd sv = numerics::svd(bs_residual);
    const ComplexMatrix q = adjoint(sv.vh); // columns: right-singular vectors, descending

    for (std::size_t alpha = n_b; alpha >= 2; --alpha) {
        const ComplexMatrix f = column_block(q, n_b - alpha, alpha);
        const ComplexMatrix hf = h_hat * f;
        SortedRows w = sort_rows_desc(hf);
        const std::size_t streams = std::min(m_b, alpha);
        std::vector<std::size_t> top(w.permutation.begin(), w.permutation.begin() + static_cast<std::ptrdiff_t>(streams));
        ComplexMatrix g;
        try {
            g = zf_precoder(select_rows(hf, top));
        } catch (const NearSingularError&) {
            continue;
        }
        ComplexMatrix v = f * g;
        if (within(cn::per_chain_residual_powers(bs_residual, v, p_b), lambda_b))
            return PrecoderDesign{std::move(v), alpha, std::move(w.permutation), std::move(top), true};
    }

    ComplexMatrix v = column_block(q, n_b - 1, 1);
    if (!within(cn::per_chain_residual_powers(bs_residual, v, p_b), lambda_b))
        return std::nullopt;
    std::vector<std::size_t> all(k);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return PrecoderDesign{std::move(v), 1, all, all, true};
}

double design_objective(const DesignProblem& problem, const PrecoderDesign& d) {
    const ComplexMatrix h_served = select_rows(problem.h_hat, d.served);
    const ComplexMatrix sigma = problem.interference_floor * ComplexMatrix::identity(d.served.size());
    return link::downlink_rate(h_served, d.v_b, problem.tau_dl_sq, problem.p_b, sigma);
}

std::optional<JointDesign> design(const DesignProblem& problem) {
    problem.validate();
    const cn::UeCancellers ue = cn::build_ue_cancellers(problem.h_kk_hat, problem.quantizer);
    const ComplexMatrix ue_residual = problem.h_kk_hat + ue.c_k;

    std::vector<cn::TapLayout> layouts;
    if (problem.search_layouts)
        layouts = cn::allowable_tap_layouts(problem.h_bb_hat, problem.taps);
    else
        layouts.push_back(cn::select_taps(problem.h_bb_hat, problem.taps));

    std::optional<JointDesign> best;
    for (const cn::TapLayout& layout : layouts) {
        cn::AnalogCanceller analog = cn::build_analog_canceller(problem.h_bb_hat, layout, problem.quantizer);
        const ComplexMatrix residual = problem.h_bb_hat + analog.c_b;
        std::optional<PrecoderDesign> pd = design_for_canceller(problem.h_hat, residual, ue_residual, problem.p_b,
                                                                problem.p_k, problem.lambda_b, problem.lambda_k,
                                                                problem.m_b);
        if (!pd)
            continue;
        const double score = design_objective(problem, *pd);
        if (best && !(score > best->objective))
            continue;
        cn::CancellerState state{std::move(analog.c_b), std::move(analog.taps), ue.c_k, ComplexMatrix{}, ue.d_k};
        state.d_b = cn::build_digital_canceller_bs(problem.h_bb_hat, state.c_b);
        best = JointDesign{std::move(*pd), std::move(state), score};
    }
    return best;
}

} // namespace fdmimo::precoder

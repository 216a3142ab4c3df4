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

#include "fdmimo/cancellation.hpp"

#include "fdmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace fdmimo::cancellation {

void QuantizerSpec::validate() const {
    if (!(attenuation_step_db > 0.0) || !std::isfinite(attenuation_step_db))
        throw ContractError("QuantizerSpec.attenuation_step_db must be positive");
    if (!(phase_step_deg > 0.0) || !std::isfinite(phase_step_deg))
        throw ContractError("QuantizerSpec.phase_step_deg must be positive");
}

namespace {

// Stable descending order of flat indices by |a|; equal magnitudes keep
// row-major (lexicographic) order.
std::vector<std::size_t> magnitude_order(const ComplexMatrix& a) {
    std::vector<std::size_t> idx(a.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const cplx* d = a.data();
    std::stable_sort(idx.begin(), idx.end(), [d](std::size_t x, std::size_t y) { return std::abs(d[x]) > std::abs(d[y]); });
    return idx;
}

TapLayout to_layout(const std::vector<bool>& mask, std::size_t cols) {
    TapLayout layout;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i])
            layout.push_back({i / cols, i % cols});
    return layout;
}

// Fill `mask` up to n entries with the largest-magnitude unmasked positions.
void fill_by_magnitude(const ComplexMatrix& a, std::vector<bool>& mask, std::size_t n) {
    std::size_t have = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    for (std::size_t i : magnitude_order(a)) {
        if (have >= n)
            break;
        if (!mask[i]) {
            mask[i] = true;
            ++have;
        }
    }
}

// Indices sorted by descending energy, stable.
std::vector<std::size_t> energy_order(const std::vector<double>& energy) {
    std::vector<std::size_t> idx(energy.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return energy[x] > energy[y]; });
    return idx;
}

void check_budget(const ComplexMatrix& h, std::size_t n) {
    if (n > h.size())
        throw ContractError("tap budget " + std::to_string(n) + " exceeds " + std::to_string(h.size()) + " positions");
}

} // namespace

TapLayout select_taps(const ComplexMatrix& h_bb_hat, std::size_t n) {
    check_budget(h_bb_hat, n);
    std::vector<bool> mask(h_bb_hat.size(), false);
    fill_by_magnitude(h_bb_hat, mask, n);
    return to_layout(mask, h_bb_hat.cols());
}

cplx quantize_tap(cplx v, const QuantizerSpec& q) {
    if (v == cplx{})
        return v;
    const double mag_db = 20.0 * std::log10(std::abs(v));
    const double q_db = std::round(mag_db / q.attenuation_step_db) * q.attenuation_step_db;
    const double step = q.phase_step_deg * std::numbers::pi / 180.0;
    const double q_phase = std::round(std::arg(v) / step) * step;
    return std::polar(std::pow(10.0, q_db / 20.0), q_phase);
}

AnalogCanceller build_analog_canceller(const ComplexMatrix& h_bb_hat, std::size_t n, const Quantizer& q) {
    const TapLayout layout = select_taps(h_bb_hat, n);
    return build_analog_canceller(h_bb_hat, layout, q);
}

AnalogCanceller build_analog_canceller(const ComplexMatrix& h_bb_hat, std::span<const TapPosition> layout,
                                       const Quantizer& q) {
    if (q)
        q->validate();
    AnalogCanceller out{ComplexMatrix(h_bb_hat.rows(), h_bb_hat.cols()), {}};
    std::vector<bool> used(h_bb_hat.size(), false);
    for (const TapPosition& p : layout) {
        if (p.row >= h_bb_hat.rows() || p.col >= h_bb_hat.cols())
            throw ContractError("tap position out of range");
        const std::size_t flat = p.row * h_bb_hat.cols() + p.col;
        if (used[flat])
            throw ContractError("duplicate tap position");
        used[flat] = true;
        const cplx v = h_bb_hat(p.row, p.col);
        out.c_b(p.row, p.col) = -(q ? quantize_tap(v, *q) : v);
    }
    out.taps = to_layout(used, h_bb_hat.cols());
    return out;
}

std::vector<TapLayout> allowable_tap_layouts(const ComplexMatrix& h_bb_hat, std::size_t n) {
    check_budget(h_bb_hat, n);
    const std::size_t rows = h_bb_hat.rows();
    const std::size_t cols = h_bb_hat.cols();
    std::vector<TapLayout> layouts{select_taps(h_bb_hat, n)};

    const std::vector<double> row_energy = row_norms_sq(h_bb_hat);
    std::vector<double> col_energy(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            col_energy[c] += std::norm(h_bb_hat(r, c));

    if (cols > 0) {
        std::vector<bool> mask(h_bb_hat.size(), false);
        const std::vector<std::size_t> order = energy_order(row_energy);
        for (std::size_t i = 0; i < n / cols; ++i)
            for (std::size_t c = 0; c < cols; ++c)
                mask[order[i] * cols + c] = true;
        fill_by_magnitude(h_bb_hat, mask, n);
        layouts.push_back(to_layout(mask, cols));
    }
    if (rows > 0) {
        std::vector<bool> mask(h_bb_hat.size(), false);
        const std::vector<std::size_t> order = energy_order(col_energy);
        for (std::size_t i = 0; i < n / rows; ++i)
            for (std::size_t r = 0; r < rows; ++r)
                mask[r * cols + order[i]] = true;
        fill_by_magnitude(h_bb_hat, mask, n);
        layouts.push_back(to_layout(mask, cols));
    }

    std::vector<TapLayout> unique;
    for (TapLayout& l : layouts)
        if (std::find(unique.begin(), unique.end(), l) == unique.end())
            unique.push_back(std::move(l));
    return unique;
}

UeCancellers build_ue_cancellers(const ComplexMatrix& h_kk_hat, const Quantizer& q) {
    if (!h_kk_hat.is_square() || !is_diagonal(h_kk_hat))
        throw ContractError("build_ue_cancellers: UE SI estimate must be square diagonal");
    if (q)
        q->validate();
    const std::size_t k = h_kk_hat.rows();
    UeCancellers out{ComplexMatrix(k, k), ComplexMatrix(k, k)};
    for (std::size_t i = 0; i < k; ++i) {
        const cplx h = h_kk_hat(i, i);
        out.c_k(i, i) = -(q ? quantize_tap(h, *q) : h);
        out.d_k(i, i) = -(h + out.c_k(i, i));
    }
    return out;
}

ComplexMatrix build_digital_canceller_bs(const ComplexMatrix& h_bb_hat, const ComplexMatrix& c_b) {
    if (h_bb_hat.rows() != c_b.rows() || h_bb_hat.cols() != c_b.cols())
        throw ContractError("build_digital_canceller_bs: shape mismatch");
    return -(h_bb_hat + c_b);
}

std::vector<double> per_chain_residual_powers(const ComplexMatrix& h_res, const ComplexMatrix& v, double p) {
    if (h_res.cols() != v.rows())
        throw ContractError("per_chain_residual_powers: shape mismatch");
    std::vector<double> powers = row_norms_sq(h_res * v);
    for (double& x : powers)
        x *= p;
    return powers;
}

} // namespace fdmimo::cancellation

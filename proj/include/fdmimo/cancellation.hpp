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

#ifndef FDMIMO_CANCELLATION_HPP
#define FDMIMO_CANCELLATION_HPP

#include "fdmimo/complex_matrix.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fdmimo::cancellation {

/// Analog tap resolution. An empty std::optional<QuantizerSpec> means ideal
/// (unquantized) taps.
struct QuantizerSpec {
    double attenuation_step_db = 0.02;
    double phase_step_deg = 0.13;

    void validate() const;
};

using Quantizer = std::optional<QuantizerSpec>;

struct TapPosition {
    std::size_t row = 0;
    std::size_t col = 0;

    auto operator<=>(const TapPosition&) const = default;
};

using TapLayout = std::vector<TapPosition>;

/// Positions of the n largest-magnitude entries, ties by (row, col). The
/// result is sorted by (row, col). Requires n <= rows * cols.
TapLayout select_taps(const ComplexMatrix& h_bb_hat, std::size_t n);

/// Nearest point on the (dB magnitude, phase) grid; 0 passes through.
cplx quantize_tap(cplx v, const QuantizerSpec& q);

struct AnalogCanceller {
    ComplexMatrix c_b;
    TapLayout taps;
};

/// C_b = -quantize(H_bb_hat) on the greedy layout, zero elsewhere.
AnalogCanceller build_analog_canceller(const ComplexMatrix& h_bb_hat, std::size_t n, const Quantizer& q);

/// Same, on an explicit layout (positions must be distinct and in range).
AnalogCanceller build_analog_canceller(const ComplexMatrix& h_bb_hat, std::span<const TapPosition> layout,
                                       const Quantizer& q);

/// Candidate layouts of n taps searched by the joint design: the greedy
/// magnitude layout, whole rows by row energy and whole columns by column
/// energy (remainders filled by magnitude). Duplicates are removed; the greedy
/// layout is always first.
std::vector<TapLayout> allowable_tap_layouts(const ComplexMatrix& h_bb_hat, std::size_t n);

struct UeCancellers {
    ComplexMatrix c_k; // analog, quantized
    ComplexMatrix d_k; // digital, cancels the quantization residue
};

/// Throws ContractError unless h_kk_hat is diagonal.
UeCancellers build_ue_cancellers(const ComplexMatrix& h_kk_hat, const Quantizer& q);

/// D_b = -(H_bb_hat + C_b).
ComplexMatrix build_digital_canceller_bs(const ComplexMatrix& h_bb_hat, const ComplexMatrix& c_b);

/// Element j = p * ||row j of (h_res * v)||^2.
std::vector<double> per_chain_residual_powers(const ComplexMatrix& h_res, const ComplexMatrix& v, double p);

struct CancellerState {
    ComplexMatrix c_b;
    TapLayout taps;
    ComplexMatrix c_k;
    ComplexMatrix d_b;
    ComplexMatrix d_k;
};

} // namespace fdmimo::cancellation

#endif

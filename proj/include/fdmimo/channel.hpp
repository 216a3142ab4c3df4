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

#ifndef FDMIMO_CHANNEL_HPP
#define FDMIMO_CHANNEL_HPP

#include "fdmimo/complex_matrix.hpp"
#include "fdmimo/random.hpp"

#include <cstddef>

namespace fdmimo::channel {

/// Physical channel parameters; pathlosses and kappa are linear power gains.
struct ChannelParams {
    std::size_t n_b = 8;     // BS antennas
    std::size_t k_users = 4; // single-antenna UEs
    double l_k = 1e-11;      // DL/UL pathloss
    double l_bb = 1e-4;      // BS self-interference pathloss
    double l_kk = 1e-4;      // UE self-interference pathloss
    double l_in = 1e-11;     // UE-to-UE pathloss
    double kappa = 1000.0;   // Rician factor of the SI channels
    double f_d = 50.0;       // Doppler, Hz
    double t_c = 1e-3;       // slot spacing, s

    // Throws ContractError naming the offending field.
    void validate() const;
};

/// All channels of one slot. The UL channel is transpose(h); no separate draw exists.
struct ChannelSet {
    ComplexMatrix h;    // K x N_b downlink
    ComplexMatrix h_bb; // N_b x N_b BS SI
    ComplexMatrix h_kk; // K x K diagonal UE SI
    ComplexMatrix h_in; // K x K inter-node, zero diagonal

    ComplexMatrix uplink() const { return transpose(h); }
};

// Entry (m, n) = sqrt(pathloss) * (sqrt(kappa/(kappa+1)) e^{j pi (m+n)/max(rows,cols)}
//                                  + sqrt(1/(kappa+1)) g),  g ~ CN(0, 1).
ComplexMatrix draw_rician(std::size_t rows, std::size_t cols, double kappa, double pathloss, RandomStream& rng);

// IID CN(0, variance) entries.
ComplexMatrix draw_gaussian(std::size_t rows, std::size_t cols, double variance, RandomStream& rng);

// Draw order is fixed (H, H_bb, H_KK diagonal, H_IN off-diagonal) so a seed
// pins the whole set.
ChannelSet draw_initial(const ChannelParams& params, RandomStream& rng);

/// Slot-to-slot correlation J0(2 pi f_d T_c).
double jakes_rho(double f_d, double t_c);

/// First-order Gauss-Markov step on H and H_IN: next = rho * prev + sqrt(1 - rho^2) * E.
/// SI channels are carried over unchanged.
ChannelSet evolve(const ChannelSet& prev, double rho, const ChannelParams& params, RandomStream& rng);

} // namespace fdmimo::channel

#endif

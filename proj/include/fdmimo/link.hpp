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

#ifndef FDMIMO_LINK_HPP
#define FDMIMO_LINK_HPP

#include "fdmimo/cancellation.hpp"
#include "fdmimo/channel.hpp"
#include "fdmimo/complex_matrix.hpp"
#include "fdmimo/random.hpp"
#include "fdmimo/rate.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace fdmimo::link {

enum class Scheme { scdc, sbfd, hd, ideal };

std::string_view scheme_name(Scheme s) noexcept;
std::optional<Scheme> parse_scheme(std::string_view text) noexcept;

/// Protocol and power parameters; powers in mW.
struct SchemeParams {
    double training_fraction = 0.1; // HD and SBFD training share of the slot
    double p_b = 1e4;
    double p_k = 10.0;
    double sigma_b_sq = 1e-10;
    double sigma_k_sq = 1e-10;
    double lambda_b = 1e-5;
    double lambda_k = 1e-5;
    std::size_t taps = 64;
    std::size_t t = 400;
    std::size_t m_b = 0; // 0: one stream per user
    cancellation::Quantizer quantizer = cancellation::QuantizerSpec{};
    double tau_si = 0.0; // SI channel knowledge error, 0 = perfect

    std::size_t streams(std::size_t k_users) const noexcept { return m_b == 0 ? k_users : m_b; }
    // Throws ContractError naming the field.
    void validate(const channel::ChannelParams& ch) const;
};

struct LinkScenario {
    channel::ChannelParams channel;
    SchemeParams scheme;

    void validate() const;
};

struct SlotOutcome {
    Scheme scheme = Scheme::scdc;
    double rate_bits_per_use = 0.0;
    double tau_dl_sq = 1.0;
    bool feasible = false;
    std::size_t alpha = 0;      // SCDC only
    std::size_t served = 0;     // users with a stream
    double sigma_r_sq = 0.0;    // residual SI during training
};

/// BS and UE SI estimates fed to the design.
struct SiEstimate {
    ComplexMatrix h_bb_hat;
    ComplexMatrix h_kk_hat;
};

/// Perfect knowledge when tau_si == 0 (no random draws); otherwise
/// sqrt(1 - tau_si^2) H + tau_si E with E of the channel's pathloss.
SiEstimate estimate_si(const channel::ChannelSet& slot, double tau_si, const channel::ChannelParams& ch,
                       RandomStream& rng);

/// State carried from slot i-1 into slot i.
struct WarmUp {
    ComplexMatrix v_prev;      // N_b x streams
    ComplexMatrix residual_si; // H_bb + C_b + D_b in the digital domain
    bool feasible = false;
};

/// Design on an independent DL draw `h_warm` with perfect knowledge of it. When
/// infeasible, the weakest right-singular direction of the greedy residual is used.
WarmUp warm_up(const LinkScenario& scn, const channel::ChannelSet& slot, const SiEstimate& si,
               const ComplexMatrix& h_warm);

/// Channels shared by every scheme in one Monte Carlo trial.
struct TrialChannels {
    channel::ChannelSet prev; // slot i-1
    channel::ChannelSet next; // slot i
    ComplexMatrix h_warm;     // independent DL draw for the warm-up design
    SiEstimate si_hat;
};

/// Draw order: slot i, slot i-1 (one AR(1) step back), warm-up DL, SI errors.
TrialChannels draw_trial_channels(const LinkScenario& scn, RandomStream& rng);

SlotOutcome run_scdc_trial(const LinkScenario& scn, const channel::ChannelSet& prev, const channel::ChannelSet& next,
                           const SiEstimate& si_hat, const WarmUp& warm, RandomStream& rng);
SlotOutcome run_hd_trial(const LinkScenario& scn, const channel::ChannelSet& slot, RandomStream& rng);
SlotOutcome run_sbfd_trial(const LinkScenario& scn, const channel::ChannelSet& slot, RandomStream& rng);
SlotOutcome run_ideal_trial(const LinkScenario& scn, const channel::ChannelSet& slot);

/// Dispatch on scheme; SCDC includes its warm-up.
SlotOutcome run_trial(Scheme s, const LinkScenario& scn, const TrialChannels& ch, RandomStream& rng);

// Pilot symbols available in the HD training phase.
std::size_t hd_training_length(const SchemeParams& p);
// Pilot symbols per UE in the SBFD TDMA phase.
std::size_t sbfd_training_length(const SchemeParams& p, std::size_t k_users);

} // namespace fdmimo::link

#endif

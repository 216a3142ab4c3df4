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

#include "fdmimo/link.hpp"

#include "fdmimo/errors.hpp"
#include "fdmimo/estimation.hpp"
#include "fdmimo/numerics.hpp"
#include "fdmimo/precoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace fdmimo::link {

namespace cn = cancellation;
namespace est = estimation;

std::string_view scheme_name(Scheme s) noexcept {
    switch (s) {
    case Scheme::scdc:
        return "SCDC";
    case Scheme::sbfd:
        return "SBFD";
    case Scheme::hd:
        return "HD";
    case Scheme::ideal:
        return "IDEAL";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view text) noexcept {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "scdc")
        return Scheme::scdc;
    if (lower == "sbfd")
        return Scheme::sbfd;
    if (lower == "hd")
        return Scheme::hd;
    if (lower == "ideal")
        return Scheme::ideal;
    return std::nullopt;
}

std::size_t hd_training_length(const SchemeParams& p) {
    return static_cast<std::size_t>(std::floor(p.training_fraction * static_cast<double>(p.t) + 1e-9));
}

std::size_t sbfd_training_length(const SchemeParams& p, std::size_t k_users) {
    return hd_training_length(p) / std::max<std::size_t>(k_users, 1);
}

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || std::isnan(v))
        throw ContractError(std::string("SchemeParams.") + field + " must be positive");
}

std::size_t stream_count(const SchemeParams& p, const channel::ChannelParams& ch) {
    return p.m_b == 0 ? std::min(ch.k_users, ch.n_b) : p.m_b;
}

std::vector<std::size_t> all_users(std::size_t k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

struct ServedPrecoder {
    ComplexMatrix v;
    std::vector<std::size_t> served;
};

// Full-space ZF on the strongest `streams` users (all users, in order, when streams == K).
std::optional<ServedPrecoder> zf_served(const ComplexMatrix& h_hat, std::size_t streams) {
    std::vector<std::size_t> served;
    if (streams >= h_hat.rows()) {
        served = all_users(h_hat.rows());
    } else {
        const auto sorted = precoder::sort_rows_desc(h_hat);
        served.assign(sorted.permutation.begin(), sorted.permutation.begin() + static_cast<std::ptrdiff_t>(streams));
    }
    try {
        return ServedPrecoder{precoder::zf_precoder(select_rows(h_hat, served)), served};
    } catch (const NearSingularError&) {
        return std::nullopt;
    }
}

double served_rate(const ComplexMatrix& h_hat, const ServedPrecoder& sp, double tau_dl_sq, double p_b,
                   const ComplexMatrix& sigma) {
    return downlink_rate(select_rows(h_hat, sp.served), sp.v, tau_dl_sq, p_b, principal_submatrix(sigma, sp.served));
}

// Single-user-at-a-time TDMA pilot estimate of row `user` of h with fresh CSI.
ComplexMatrix estimate_row(const ComplexMatrix& h, std::size_t user, const est::TrainingBlock& pilot, double l_k,
                           double sigma_b_sq, RandomStream& rng) {
    const std::size_t n_b = h.cols();
    const std::size_t u = user;
    const ComplexMatrix row = select_rows(h, std::span<const std::size_t>(&u, 1));
    const ComplexMatrix no_si(n_b, n_b);
    const ComplexMatrix no_precoder(n_b, 1);
    const ComplexMatrix y = est::receive_training(row, 1.0, l_k, no_si, no_precoder, pilot, 0.0, sigma_b_sq, rng);
    return transpose(est::mmse_estimate(y, pilot, 1.0, sigma_b_sq, 0.0, pilot.per_ue_power * l_k));
}

} // namespace

void SchemeParams::validate(const channel::ChannelParams& ch) const {
    if (!(training_fraction > 0.0 && training_fraction < 1.0))
        throw ContractError("SchemeParams.training_fraction must lie in (0, 1)");
    require_positive(p_b, "p_b");
    require_positive(p_k, "p_k");
    require_positive(sigma_b_sq, "sigma_b_sq");
    require_positive(sigma_k_sq, "sigma_k_sq");
    require_positive(lambda_b, "lambda_b");
    require_positive(lambda_k, "lambda_k");
    if (t < ch.k_users)
        throw InfeasiblePilotError("SchemeParams.t: " + std::to_string(t) + " symbols cannot carry " +
                                   std::to_string(ch.k_users) + " orthogonal pilots");
    if (hd_training_length(*this) < ch.k_users)
        throw InfeasiblePilotError("SchemeParams.training_fraction: training phase of " +
                                   std::to_string(hd_training_length(*this)) + " symbols is shorter than K = " +
                                   std::to_string(ch.k_users));
    if (taps > ch.n_b * ch.n_b)
        throw ContractError("SchemeParams.taps exceeds N_b^2");
    if (m_b > std::min(ch.k_users, ch.n_b))
        throw ContractError("SchemeParams.m_b exceeds min(K, N_b)");
    if (quantizer)
        quantizer->validate();
    if (!(tau_si >= 0.0 && tau_si <= 1.0))
        throw ContractError("SchemeParams.tau_si must lie in [0, 1]");
}

void LinkScenario::validate() const {
    channel.validate();
    scheme.validate(channel);
}

SiEstimate estimate_si(const channel::ChannelSet& slot, double tau_si, const channel::ChannelParams& ch,
                       RandomStream& rng) {
    if (tau_si == 0.0)
        return {slot.h_bb, slot.h_kk};
    const double keep = std::sqrt(1.0 - tau_si * tau_si);
    SiEstimate si{scale_add(keep, slot.h_bb, tau_si, channel::draw_gaussian(ch.n_b, ch.n_b, ch.l_bb, rng)),
                  ComplexMatrix(ch.k_users, ch.k_users)};
    for (std::size_t i = 0; i < ch.k_users; ++i)
        si.h_kk_hat(i, i) = keep * slot.h_kk(i, i) + tau_si * rng.complex_normal(ch.l_kk);
    return si;
}

namespace {

precoder::DesignProblem make_problem(const LinkScenario& scn, const SiEstimate& si, const ComplexMatrix& h_hat,
                                     double tau_dl_sq) {
    const auto& p = scn.scheme;
    const auto& ch = scn.channel;
    precoder::DesignProblem prob;
    prob.h_hat = h_hat;
    prob.h_bb_hat = si.h_bb_hat;
    prob.h_kk_hat = si.h_kk_hat;
    prob.taps = p.taps;
    prob.p_b = p.p_b;
    prob.p_k = p.p_k;
    prob.lambda_b = p.lambda_b;
    prob.lambda_k = p.lambda_k;
    prob.m_b = stream_count(p, ch);
    prob.quantizer = p.quantizer;
    prob.tau_dl_sq = tau_dl_sq;
    // What the BS knows of the UE-side interference: its statistics only.
    prob.interference_floor = p.sigma_k_sq + tau_dl_sq * p.p_b * ch.l_k +
                              static_cast<double>(ch.k_users - 1) * p.p_k * ch.l_in;
    return prob;
}

} // namespace

WarmUp warm_up(const LinkScenario& scn, const channel::ChannelSet& slot, const SiEstimate& si,
               const ComplexMatrix& h_warm) {
    const precoder::DesignProblem prob = make_problem(scn, si, h_warm, 0.0);
    if (auto d = precoder::design(prob)) {
        ComplexMatrix residual = slot.h_bb + d->cancellers.c_b + d->cancellers.d_b;
        return {std::move(d->precoder.v_b), std::move(residual), true};
    }
    const cn::AnalogCanceller analog = cn::build_analog_canceller(si.h_bb_hat, scn.scheme.taps, scn.scheme.quantizer);
    const ComplexMatrix residual_hat = si.h_bb_hat + analog.c_b;
    const numerics::Svd sv = numerics::svd(residual_hat);
    const ComplexMatrix v = column_block(adjoint(sv.vh), scn.channel.n_b - 1, 1);
    const ComplexMatrix d_b = cn::build_digital_canceller_bs(si.h_bb_hat, analog.c_b);
    return {v, slot.h_bb + analog.c_b + d_b, false};
}

TrialChannels draw_trial_channels(const LinkScenario& scn, RandomStream& rng) {
    const auto& ch = scn.channel;
    TrialChannels out;
    out.next = channel::draw_initial(ch, rng);
    out.prev = channel::evolve(out.next, channel::jakes_rho(ch.f_d, ch.t_c), ch, rng);
    out.h_warm = channel::draw_gaussian(ch.k_users, ch.n_b, ch.l_k, rng);
    out.si_hat = estimate_si(out.next, scn.scheme.tau_si, ch, rng);
    return out;
}

SlotOutcome run_scdc_trial(const LinkScenario& scn, const channel::ChannelSet& prev, const channel::ChannelSet& next,
                           const SiEstimate& si_hat, const WarmUp& warm, RandomStream& rng) {
    const auto& p = scn.scheme;
    const auto& ch = scn.channel;
    SlotOutcome out;
    out.scheme = Scheme::scdc;

    // Step 1: slot i-1 training received under the slot i-1 precoder's residual SI.
    const double rho = channel::jakes_rho(ch.f_d, ch.t_c);
    const est::TrainingBlock pilots = est::make_training(ch.k_users, p.t, p.p_k);
    const double p_rx = p.p_k * ch.l_k;
    out.sigma_r_sq = est::residual_si_power(warm.residual_si, warm.v_prev, p.p_b, ch.n_b);
    if (prev.h_bb.rows() != warm.residual_si.rows())
        throw ContractError("run_scdc_trial: warm-up state does not match the slot");
    const ComplexMatrix y =
        est::receive_training(next.h, rho, ch.l_k, warm.residual_si, warm.v_prev, pilots, p.p_b, p.sigma_b_sq, rng);

    // Step 2: delayed estimate of the slot i DL channel.
    const double rho_est = std::clamp(rho, 0.0, 1.0);
    out.tau_dl_sq = est::compute_mse(rho_est, p.sigma_b_sq, out.sigma_r_sq, p_rx, p.t);
    const ComplexMatrix h_lmmse = transpose(est::mmse_estimate(y, pilots, rho_est, p.sigma_b_sq, out.sigma_r_sq, p_rx));
    const ComplexMatrix h_hat = est::gauss_markov_estimate(h_lmmse, out.tau_dl_sq);

    // Step 3: joint design, full slot of data.
    const auto d = precoder::design(make_problem(scn, si_hat, h_hat, out.tau_dl_sq));
    if (!d)
        return out;
    const auto& cs = d->cancellers;
    const ComplexMatrix ue_residual = next.h_kk + cs.c_k + cs.d_k;
    const ComplexMatrix sigma = interference_covariance(ue_residual, next.h_in, p.p_k, out.tau_dl_sq, p.p_b, ch.l_k,
                                                        d->precoder.v_b, p.sigma_k_sq);
    out.feasible = true;
    out.alpha = d->precoder.alpha;
    out.served = d->precoder.served.size();
    out.rate_bits_per_use = downlink_rate(select_rows(h_hat, d->precoder.served), d->precoder.v_b, out.tau_dl_sq,
                                          p.p_b, principal_submatrix(sigma, d->precoder.served));
    return out;
}

SlotOutcome run_hd_trial(const LinkScenario& scn, const channel::ChannelSet& slot, RandomStream& rng) {
    const auto& p = scn.scheme;
    const auto& ch = scn.channel;
    SlotOutcome out;
    out.scheme = Scheme::hd;

    const std::size_t t_tr = hd_training_length(p);
    const est::TrainingBlock pilots = est::make_training(ch.k_users, t_tr, p.p_k);
    const double p_rx = p.p_k * ch.l_k;
    const ComplexMatrix no_si(ch.n_b, ch.n_b);
    const ComplexMatrix no_precoder(ch.n_b, 1);
    const ComplexMatrix y = est::receive_training(slot.h, 1.0, ch.l_k, no_si, no_precoder, pilots, 0.0, p.sigma_b_sq, rng);
    out.tau_dl_sq = est::compute_mse(1.0, p.sigma_b_sq, 0.0, p_rx, t_tr);
    const ComplexMatrix h_hat = est::gauss_markov_estimate(
        transpose(est::mmse_estimate(y, pilots, 1.0, p.sigma_b_sq, 0.0, p_rx)), out.tau_dl_sq);

    const auto sp = zf_served(h_hat, stream_count(p, ch));
    if (!sp)
        return out;
    const double floor = p.sigma_k_sq + out.tau_dl_sq * p.p_b * ch.l_k * frobenius_norm_sq(sp->v);
    const ComplexMatrix sigma = floor * ComplexMatrix::identity(ch.k_users);
    out.feasible = true;
    out.served = sp->served.size();
    out.rate_bits_per_use = (1.0 - p.training_fraction) * served_rate(h_hat, *sp, out.tau_dl_sq, p.p_b, sigma);
    return out;
}

SlotOutcome run_sbfd_trial(const LinkScenario& scn, const channel::ChannelSet& slot, RandomStream& rng) {
    const auto& p = scn.scheme;
    const auto& ch = scn.channel;
    const std::size_t k = ch.k_users;
    SlotOutcome out;
    out.scheme = Scheme::sbfd;
    out.sigma_r_sq = 0.0; // full-tap ideal analog cancellation

    const std::size_t t_u = sbfd_training_length(p, k);
    if (t_u < 1)
        throw InfeasiblePilotError("run_sbfd_trial: TDMA training leaves no pilot symbol per user");
    const est::TrainingBlock pilot = est::make_training(1, t_u, p.p_k);
    const double p_rx = p.p_k * ch.l_k;
    out.tau_dl_sq = est::compute_mse(1.0, p.sigma_b_sq, 0.0, p_rx, t_u);

    ComplexMatrix h_lmmse(k, ch.n_b);
    for (std::size_t u = 0; u < k; ++u) {
        const ComplexMatrix row = estimate_row(slot.h, u, pilot, ch.l_k, p.sigma_b_sq, rng);
        std::copy(row.row(0).begin(), row.row(0).end(), h_lmmse.row(u).begin());
    }
    const ComplexMatrix h_hat = est::gauss_markov_estimate(h_lmmse, out.tau_dl_sq);
    const std::size_t streams = stream_count(p, ch);
    const double leakage = out.tau_dl_sq * p.p_b * ch.l_k;

    // Sub-slot j: users 0..j-1 already trained and are served while UE j sends pilots.
    double training_phase = 0.0;
    for (std::size_t j = 1; j < k; ++j) {
        const std::vector<std::size_t> trained = all_users(j);
        const ComplexMatrix h_trained = select_rows(h_hat, trained);
        const auto sp = zf_served(h_trained, std::min(streams, j));
        if (!sp)
            continue;
        ComplexMatrix sigma = (p.sigma_k_sq + leakage) * ComplexMatrix::identity(j);
        for (std::size_t i = 0; i < j; ++i)
            sigma(i, i) += p.p_k * std::norm(slot.h_in(i, j));
        training_phase += served_rate(h_trained, *sp, out.tau_dl_sq, p.p_b, sigma);
    }
    training_phase /= static_cast<double>(k);

    const auto sp = zf_served(h_hat, streams);
    if (!sp)
        return out;
    const ComplexMatrix sigma = (p.sigma_k_sq + leakage) * ComplexMatrix::identity(k);
    const double data_phase = served_rate(h_hat, *sp, out.tau_dl_sq, p.p_b, sigma);
    out.feasible = true;
    out.served = sp->served.size();
    out.rate_bits_per_use = p.training_fraction * training_phase + (1.0 - p.training_fraction) * data_phase;
    return out;
}

SlotOutcome run_ideal_trial(const LinkScenario& scn, const channel::ChannelSet& slot) {
    const auto& p = scn.scheme;
    const auto& ch = scn.channel;
    SlotOutcome out;
    out.scheme = Scheme::ideal;
    out.tau_dl_sq = 0.0;
    const auto sp = zf_served(slot.h, stream_count(p, ch));
    if (!sp)
        return out;
    const ComplexMatrix no_ue_si(ch.k_users, ch.k_users);
    const ComplexMatrix sigma = interference_covariance(no_ue_si, slot.h_in, p.p_k, 0.0, p.p_b, ch.l_k, sp->v, p.sigma_k_sq);
    out.feasible = true;
    out.served = sp->served.size();
    out.rate_bits_per_use = served_rate(slot.h, *sp, 0.0, p.p_b, sigma);
    return out;
}

SlotOutcome run_trial(Scheme s, const LinkScenario& scn, const TrialChannels& ch, RandomStream& rng) {
    switch (s) {
    case Scheme::scdc: {
        const WarmUp warm = warm_up(scn, ch.prev, ch.si_hat, ch.h_warm);
        return run_scdc_trial(scn, ch.prev, ch.next, ch.si_hat, warm, rng);
    }
    case Scheme::sbfd:
        return run_sbfd_trial(scn, ch.next, rng);
    case Scheme::hd:
        return run_hd_trial(scn, ch.next, rng);
    case Scheme::ideal:
        return run_ideal_trial(scn, ch.next);
    }
    throw ContractError("run_trial: unknown scheme");
}

} // namespace fdmimo::link

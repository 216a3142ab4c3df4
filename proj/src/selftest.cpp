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

#include "fdmimo/selftest.hpp"

#include "fdmimo/cancellation.hpp"
#include "fdmimo/channel.hpp"
#include "fdmimo/config.hpp"
#include "fdmimo/errors.hpp"
#include "fdmimo/estimation.hpp"
#include "fdmimo/harness.hpp"
#include "fdmimo/link.hpp"
#include "fdmimo/numerics.hpp"
#include "fdmimo/precoder.hpp"
#include "fdmimo/rate.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

namespace fdmimo {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && frobenius_norm(a - b) <= tol;
}

ComplexMatrix diag3(double a, double b, double c) {
    const cplx d[] = {a, b, c};
    return ComplexMatrix::diagonal(d);
}

channel::ChannelParams small_channel() {
    channel::ChannelParams p;
    p.n_b = 4;
    p.k_users = 2;
    return p;
}

} // namespace

int run_selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](const char* module, const char* name, const std::function<bool()>& body) {
        bool ok = false;
        std::string detail;
        try {
            ok = body();
        } catch (const std::exception& e) {
            detail = std::string(" (") + e.what() + ")";
        }
        out << (ok ? "PASS " : "FAIL ") << module << ": " << name << detail << '\n';
        if (!ok)
            ++failures;
    };
    using namespace numerics;

    check("numerics", "svd of identity", [] {
        const Svd s = svd(ComplexMatrix::identity(3));
        return near(s.s[0], 1, 1e-14) && near(s.s[1], 1, 1e-14) && near(s.s[2], 1, 1e-14) &&
               near(multiply_adjoint(s.u * s.vh, s.u * s.vh), ComplexMatrix::identity(3), 1e-12);
    });
    check("numerics", "svd of diag(3,2,1)", [] {
        const Svd s = svd(diag3(1, 3, 2));
        return near(s.s[0], 3, 1e-14) && near(s.s[1], 2, 1e-14) && near(s.s[2], 1, 1e-14);
    });
    check("numerics", "solve with identity", [] {
        ComplexMatrix b(3, 2, {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 1}, {2, 3}});
        return near(hermitian_solve(ComplexMatrix::identity(3), b), b, 1e-14);
    });
    check("numerics", "solve with 2I", [] {
        return near(hermitian_solve(2.0 * ComplexMatrix::identity(4), ComplexMatrix::identity(4)),
                    0.5 * ComplexMatrix::identity(4), 1e-14);
    });
    check("numerics", "log-det of I_4 and 2 I_3", [] {
        return near(log_det_hermitian(ComplexMatrix::identity(4)), 0.0, 1e-14) &&
               near(log_det_hermitian(2.0 * ComplexMatrix::identity(3)), 3.0, 1e-14);
    });
    check("numerics", "J0(0) = 1", [] { return bessel_j0(0.0) == 1.0; });
    check("numerics", "unit conversions", [] {
        return near(dbm_to_mw(10), 10, 1e-12) && near(dbm_to_mw(-100), 1e-10, 1e-22) &&
               near(db_to_linear(-110), 1e-11, 1e-23);
    });

    check("channel", "single user has zero inter-node channel", [] {
        channel::ChannelParams p = small_channel();
        p.k_users = 1;
        RandomStream rng(1, 0);
        const channel::ChannelSet s = channel::draw_initial(p, rng);
        return s.h_in.rows() == 1 && s.h_in(0, 0) == cplx{};
    });
    check("channel", "same seed gives identical channels", [] {
        RandomStream a(7, 3), b(7, 3);
        const auto x = channel::draw_initial(small_channel(), a);
        const auto y = channel::draw_initial(small_channel(), b);
        return x.h == y.h && x.h_bb == y.h_bb && x.h_kk == y.h_kk && x.h_in == y.h_in;
    });
    check("channel", "pure line-of-sight magnitude", [] {
        RandomStream rng(2, 0);
        const ComplexMatrix m = channel::draw_rician(3, 3, 1e12, 1e-4, rng);
        for (const cplx& v : m.entries())
            if (!near(std::abs(v), 1e-2, 1e-6))
                return false;
        return true;
    });
    check("channel", "static channel correlation", [] { return channel::jakes_rho(0.0, 1e-3) == 1.0; });
    check("channel", "rho = 1 keeps H", [] {
        RandomStream rng(3, 0);
        const auto s = channel::draw_initial(small_channel(), rng);
        return channel::evolve(s, 1.0, small_channel(), rng).h == s.h;
    });

    namespace cn = cancellation;
    check("cancellation", "full budget taps every position", [] {
        return cn::select_taps(ComplexMatrix::identity(3), 9).size() == 9;
    });
    check("cancellation", "diagonal dominance selects the diagonal", [] {
        ComplexMatrix h(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                h(r, c) = r == c ? 10.0 : 0.1;
        const cn::TapLayout t = cn::select_taps(h, 3);
        return t == cn::TapLayout{{0, 0}, {1, 1}, {2, 2}};
    });
    check("cancellation", "on-grid tap is a fixed point", [] {
        const cn::QuantizerSpec q;
        const cplx v = std::polar(std::pow(10.0, 50 * 0.02 / 20), 100 * 0.13 * std::acos(-1.0) / 180);
        return std::abs(cn::quantize_tap(v, q) - v) <= 1e-14 * std::abs(v);
    });
    check("cancellation", "zero tap passes through", [] { return cn::quantize_tap(0.0, {}) == cplx{}; });
    check("cancellation", "ideal full-tap canceller", [] {
        const ComplexMatrix h = diag3(1, 2, 3) + ComplexMatrix(3, 3, std::vector<cplx>(9, {0.1, -0.2}));
        const auto a = cn::build_analog_canceller(h, 9, std::nullopt);
        return frobenius_norm(h + a.c_b) == 0.0;
    });
    check("cancellation", "zero-tap canceller", [] {
        return frobenius_norm(cn::build_analog_canceller(diag3(1, 2, 3), 0, cn::QuantizerSpec{}).c_b) == 0.0;
    });
    check("cancellation", "ideal UE cancellers", [] {
        const ComplexMatrix h = diag3(1, 2, 3);
        const auto ue = cn::build_ue_cancellers(h, std::nullopt);
        return ue.c_k == -h && frobenius_norm(ue.d_k) == 0.0;
    });
    check("cancellation", "single UE residual is zero", [] {
        const cplx v[] = {{0.0123, -0.0456}};
        const ComplexMatrix h = ComplexMatrix::diagonal(v);
        const auto ue = cn::build_ue_cancellers(h, cn::QuantizerSpec{});
        return h(0, 0) + ue.c_k(0, 0) + ue.d_k(0, 0) == cplx{};
    });
    check("cancellation", "digital canceller identities", [] {
        const ComplexMatrix h = diag3(1, 2, 3);
        return frobenius_norm(cn::build_digital_canceller_bs(h, -h)) == 0.0 &&
               cn::build_digital_canceller_bs(h, ComplexMatrix(3, 3)) == -h;
    });
    check("cancellation", "no residual, no precoder, no power", [] {
        const auto a = cn::per_chain_residual_powers(ComplexMatrix(3, 3), ComplexMatrix::identity(3), 1e4);
        const auto b = cn::per_chain_residual_powers(ComplexMatrix::identity(3), ComplexMatrix(3, 2), 1e4);
        for (double x : a)
            if (x != 0.0)
                return false;
        for (double x : b)
            if (x != 0.0)
                return false;
        return true;
    });

    namespace est = estimation;
    check("estimation", "pilot orthogonality K=2, T=4", [] {
        const auto t = est::make_training(2, 4, 1.0);
        return near(multiply_adjoint(t.s_k, t.s_k), 4.0 * ComplexMatrix::identity(2), 1e-12);
    });
    check("estimation", "single-user pilot energy", [] {
        const auto t = est::make_training(1, 400, 10.0);
        return near(frobenius_norm_sq(t.s_k), 4000.0, 1e-9);
    });
    check("estimation", "no correlation means no estimate", [] {
        return est::compute_mse(0.0, 1e-10, 0.0, 1e-10, 400) == 1.0;
    });
    check("estimation", "long training approaches ideal CSI", [] {
        return est::compute_mse(1.0, 1e-10, 0.0, 1e-10, 100000000) < 1e-7;
    });
    check("estimation", "residual SI power scales with P_b", [] {
        const ComplexMatrix r = ComplexMatrix::identity(8);
        ComplexMatrix v(8, 1);
        v(0, 0) = 1.0;
        return est::residual_si_power(ComplexMatrix(8, 8), v, 1e4, 8) == 0.0 &&
               near(est::residual_si_power(r, v, 2e4, 8), 2.0 * est::residual_si_power(r, v, 1e4, 8), 1e-9);
    });
    check("estimation", "noiseless SI-free reception", [] {
        RandomStream rng(4, 0);
        const auto ch = channel::draw_initial(small_channel(), rng);
        const auto t = est::make_training(2, 8, 10.0);
        const ComplexMatrix y = est::receive_training(ch.h, 1.0, 1e-11, ComplexMatrix(4, 4), ComplexMatrix(4, 1), t,
                                                      1e4, 0.0, rng);
        return near(y, transpose(ch.h) * t.s_k, 1e-20);
    });

    namespace pc = precoder;
    check("precoder", "ZF of I_4", [] {
        return near(pc::zf_precoder(ComplexMatrix::identity(4)), 0.5 * ComplexMatrix::identity(4), 1e-14);
    });
    check("precoder", "row sort by norm", [] {
        ComplexMatrix m(3, 1, {1.0, 3.0, 2.0});
        return pc::sort_rows_desc(m).permutation == std::vector<std::size_t>{1, 2, 0};
    });
    check("precoder", "sorted input keeps identity order", [] {
        ComplexMatrix m(3, 1, {3.0, 2.0, 1.0});
        return pc::sort_rows_desc(m).permutation == std::vector<std::size_t>{0, 1, 2};
    });
    check("precoder", "unconstrained design stops at full dimension", [] {
        RandomStream rng(5, 0);
        const auto ch = channel::draw_initial(small_channel(), rng);
        pc::DesignProblem p;
        p.h_hat = ch.h;
        p.h_bb_hat = ch.h_bb;
        p.h_kk_hat = ch.h_kk;
        p.taps = 0;
        p.p_b = 1e4;
        p.p_k = 10;
        p.m_b = 2;
        const auto d = pc::design(p);
        return d && d->precoder.alpha == 4 && near(frobenius_norm(d->precoder.v_b), 1.0, 1e-10);
    });

    check("link", "unavailable CSI gives zero rate", [] {
        return link::downlink_rate(ComplexMatrix::identity(2), ComplexMatrix::identity(2), 1.0, 1.0,
                                   ComplexMatrix::identity(2)) == 0.0;
    });
    check("link", "noise-only covariance", [] {
        const ComplexMatrix s = link::interference_covariance(ComplexMatrix(3, 3), ComplexMatrix(3, 3), 10.0, 0.0, 1e4,
                                                              1e-11, ComplexMatrix(8, 3), 1e-10);
        return near(s, 1e-10 * ComplexMatrix::identity(3), 1e-24);
    });
    check("link", "HD training length at 10% of 400", [] {
        return link::hd_training_length(link::SchemeParams{}) == 40;
    });
    check("link", "SBFD has no residual SI", [] {
        link::LinkScenario s;
        RandomStream rng(6, 0), noise(6, 1);
        const auto ch = channel::draw_initial(s.channel, rng);
        return link::run_sbfd_trial(s, ch, noise).sigma_r_sq == 0.0;
    });
    check("link", "ideal CSI has zero error", [] {
        link::LinkScenario s;
        RandomStream rng(6, 0);
        return link::run_ideal_trial(s, channel::draw_initial(s.channel, rng)).tau_dl_sq == 0.0;
    });

    check("harness", "one run equals the single trial", [] {
        harness::PointJob job;
        job.scheme = link::Scheme::ideal;
        job.runs = 1;
        job.channel_key = 11;
        job.point_seed = 12;
        return harness::run_point(job).mean == harness::run_single(job, 0).rate_bits_per_use;
    });
    check("harness", "empty result is header only", [] {
        std::ostringstream os;
        harness::write_csv(harness::SweepResult{}, os);
        return os.str() ==
               "sweep_var,sweep_value,scheme,taps,mean_rate_bits_per_use,std_error,infeasible_fraction,runs,seed\n";
    });
    check("config", "empty text gives the default scenario", [] {
        return config::parse_config("") == config::ScenarioConfig{};
    });
    check("config", "zero runs is rejected", [] {
        try {
            config::parse_config("[run]\nruns = 0\n");
        } catch (const ConfigError& e) {
            return std::string(e.what()).find("runs") != std::string::npos;
        }
        return false;
    });

    out << (failures == 0 ? "selftest passed" : "selftest FAILED: " + std::to_string(failures) + " check(s)") << '\n';
    return failures;
}

} // namespace fdmimo

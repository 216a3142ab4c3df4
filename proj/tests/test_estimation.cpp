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

#include "fdmimo/channel.hpp"
#include "fdmimo/errors.hpp"
#include "fdmimo/estimation.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fdmimo;
using namespace fdmimo::estimation;

TEST_CASE("make_training") {
    const TrainingBlock t2 = make_training(2, 4, 1.0);
    CHECK(test::max_abs_diff(multiply_adjoint(t2.s_k, t2.s_k), 4.0 * ComplexMatrix::identity(2)) < 1e-12);

    const TrainingBlock t4 = make_training(4, 400, 10.0);
    CHECK(t4.length == 400);
    CHECK(t4.per_ue_power == 10.0);
    CHECK(test::max_abs_diff(multiply_adjoint(t4.s_k, t4.s_k), 4000.0 * ComplexMatrix::identity(4)) <= 1e-10 * 4000.0);

    CHECK(frobenius_norm_sq(make_training(1, 400, 10.0).s_k) == doctest::Approx(4000.0));
    CHECK_THROWS_AS(make_training(5, 4, 1.0), InfeasiblePilotError);
}

TEST_CASE("compute_mse") {
    CHECK(compute_mse(0.0, 1e-10, 0.0, 1e-10, 400) == 1.0);
    const double expect = 1.0 / 401.0;
    CHECK(std::abs(compute_mse(1.0, 1e-10, 0.0, 1e-10, 400) - expect) <= 1e-12 * expect);
    CHECK(compute_mse(1.0, 1e-10, 0.0, 1e-10, 1000000000) < 1e-8);
    CHECK_THROWS_AS(compute_mse(1.0, 0.0, 0.0, 0.0, 400), DegenerateConfigError);

    // Monotonicity sweeps.
    double prev = 2.0;
    for (std::size_t t = 1; t <= 1000; t += 7) {
        const double m = compute_mse(0.97, 1e-10, 3e-11, 1e-10, t);
        CHECK(m <= prev);
        prev = m;
    }
    prev = 2.0;
    for (double rho = 0.0; rho <= 1.0; rho += 0.01) {
        const double m = compute_mse(rho, 1e-10, 0.0, 1e-10, 400);
        CHECK(m <= prev + 1e-15);
        CHECK(m >= 0.0);
        CHECK(m <= 1.0);
        prev = m;
    }
    prev = -1.0;
    for (double s = 0.0; s <= 1e-8; s += 1e-10) {
        const double a = compute_mse(0.97, s, 1e-10, 1e-10, 400);
        const double b = compute_mse(0.97, 1e-10, s, 1e-10, 400);
        CHECK(a >= prev);
        CHECK(a == doctest::Approx(b));
        prev = a;
    }
}

TEST_CASE("estimator gain at the default operating point") {
    const double rho = 0.97533, sb = 1e-10, p_rx = 1e-10, l_k = 1e-11;
    const double hand = rho * l_k / (sb + 0.0 + (1 - rho * rho) * p_rx + rho * rho * 400 * p_rx);
    CHECK(std::abs(mmse_gain(rho, sb, 0.0, p_rx, 400, l_k) - hand) <= 1e-12 * hand);
}

TEST_CASE("noiseless static estimate is exact; no correlation gives zero") {
    channel::ChannelParams p;
    RandomStream rng(1, 0);
    const channel::ChannelSet ch = channel::draw_initial(p, rng);
    const TrainingBlock t = make_training(4, 400, 10.0);
    const ComplexMatrix y = receive_training(ch.h, 1.0, p.l_k, ComplexMatrix(8, 8), ComplexMatrix(8, 4), t, 1e4, 0.0, rng);
    CHECK(test::max_abs_diff(y, transpose(ch.h) * t.s_k) <= 1e-20);
    const ComplexMatrix h_ul = mmse_estimate(y, t, 1.0, 0.0, 0.0, 10.0 * p.l_k);
    CHECK(frobenius_norm(h_ul - transpose(ch.h)) <= 1e-12 * frobenius_norm(ch.h));

    const ComplexMatrix y0 = receive_training(ch.h, 0.0, p.l_k, ComplexMatrix(8, 8), ComplexMatrix(8, 4), t, 1e4, 1e-10, rng);
    CHECK(frobenius_norm(mmse_estimate(y0, t, 0.0, 1e-10, 0.0, 1e-10)) == 0.0);
    CHECK(frobenius_norm(gauss_markov_estimate(transpose(ch.h), 1.0)) == 0.0);
}

TEST_CASE("reception is reproducible and carries SI plus noise power") {
    channel::ChannelParams p;
    RandomStream a(2, 0), b(2, 0);
    const channel::ChannelSet ch = channel::draw_initial(p, a);
    channel::draw_initial(p, b);
    const TrainingBlock t = make_training(4, 100, 10.0);
    ComplexMatrix v(8, 1);
    v(0, 0) = 1.0;
    const ComplexMatrix r = 1e-6 * ComplexMatrix::identity(8);
    CHECK(receive_training(ch.h, 0.9, p.l_k, r, v, t, 1e4, 1e-10, a) ==
          receive_training(ch.h, 0.9, p.l_k, r, v, t, 1e4, 1e-10, b));

    // Without pilots only SI and noise remain.
    const TrainingBlock silent = make_training(4, 400, 0.0);
    ComplexMatrix r_full = 3e-6 * ComplexMatrix::identity(8);
    ComplexMatrix v_full(8, 2);
    v_full(0, 0) = v_full(1, 1) = std::sqrt(0.5);
    const double sigma_r = residual_si_power(r_full, v_full, 1e4, 8);
    double pow = 0.0;
    for (int rep = 0; rep < 200; ++rep)
        pow += frobenius_norm_sq(receive_training(ch.h, 1.0, p.l_k, r_full, v_full, silent, 1e4, 1e-10, a));
    CHECK(pow / (200.0 * 8 * 400) == doctest::Approx(sigma_r + 1e-10).epsilon(0.03));
}

TEST_CASE("residual_si_power") {
    ComplexMatrix v(8, 1);
    v(0, 0) = 1.0;
    CHECK(residual_si_power(ComplexMatrix(8, 8), v, 1e4, 8) == 0.0);
    CHECK(residual_si_power(ComplexMatrix::identity(8), v, 1e4, 8) == doctest::Approx(1250.0));
    std::mt19937_64 gen(3);
    const ComplexMatrix r = test::random_matrix(8, 8, gen);
    const ComplexMatrix w = test::random_matrix(8, 3, gen);
    CHECK(residual_si_power(r, w, 2e4, 8) == doctest::Approx(2.0 * residual_si_power(r, w, 1e4, 8)));
}

TEST_CASE("empirical MSE and orthogonality at the default operating point") {
    channel::ChannelParams p;
    const double rho = channel::jakes_rho(p.f_d, p.t_c);
    const double sb = 1e-10, p_k = 10.0, p_rx = p_k * p.l_k;
    const TrainingBlock t = make_training(p.k_users, 400, p_k);
    const double tau2 = compute_mse(rho, sb, 0.0, p_rx, 400);

    double err = 0.0, est_pow = 0.0, err_pow = 0.0;
    cplx cross = 0.0;
    std::size_t entries = 0;
    for (std::uint64_t trial = 0; trial < 2000; ++trial) {
        RandomStream rng(77, trial);
        const channel::ChannelSet ch = channel::draw_initial(p, rng);
        const ComplexMatrix y =
            receive_training(ch.h, rho, p.l_k, ComplexMatrix(8, 8), ComplexMatrix(8, 4), t, 1e4, sb, rng);
        const ComplexMatrix h_lmmse = transpose(mmse_estimate(y, t, rho, sb, 0.0, p_rx));
        const ComplexMatrix h_hat = gauss_markov_estimate(h_lmmse, tau2);
        const ComplexMatrix e = ch.h - std::sqrt(1.0 - tau2) * h_hat;
        err += frobenius_norm_sq(ch.h - h_lmmse);
        for (std::size_t i = 0; i < e.size(); ++i) {
            cross += h_hat.data()[i] * std::conj(e.data()[i]);
            est_pow += std::norm(h_hat.data()[i]);
            err_pow += std::norm(e.data()[i]);
        }
        entries += ch.h.size();
    }
    const double empirical = err / (static_cast<double>(entries) * p.l_k);
    CHECK(empirical == doctest::Approx(tau2).epsilon(0.05));
    CHECK(std::abs(cross) / std::sqrt(est_pow * err_pow) < 0.03);
    // Normalized estimate has the channel's variance.
    CHECK(est_pow / static_cast<double>(entries) == doctest::Approx(p.l_k).epsilon(0.03));
}

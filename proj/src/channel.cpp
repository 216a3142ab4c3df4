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
#include "fdmimo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fdmimo::channel {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw ContractError(std::string("ChannelParams.") + field + " must be positive and finite");
}

} // namespace

void ChannelParams::validate() const {
    if (n_b < 1)
        throw ContractError("ChannelParams.n_b must be >= 1");
    if (k_users < 1)
        throw ContractError("ChannelParams.k_users must be >= 1");
    require_positive(l_k, "l_k");
    require_positive(l_bb, "l_bb");
    require_positive(l_kk, "l_kk");
    require_positive(l_in, "l_in");
    require_positive(kappa, "kappa");
    require_positive(t_c, "t_c");
    if (!(f_d >= 0.0) || !std::isfinite(f_d))
        throw ContractError("ChannelParams.f_d must be >= 0");
}

ComplexMatrix draw_rician(std::size_t rows, std::size_t cols, double kappa, double pathloss, RandomStream& rng) {
    if (!(kappa > 0.0) || !(pathloss > 0.0))
        throw ContractError("draw_rician: kappa and pathloss must be positive");
    const double los = std::sqrt(pathloss * kappa / (kappa + 1.0));
    const double scatter_var = pathloss / (kappa + 1.0);
    const double span = static_cast<double>(std::max(rows, cols));
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double theta = std::numbers::pi * static_cast<double>(r + c) / span;
            m(r, c) = std::polar(los, theta) + rng.complex_normal(scatter_var);
        }
    return m;
}

ComplexMatrix draw_gaussian(std::size_t rows, std::size_t cols, double variance, RandomStream& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rng.complex_normal(variance);
    return m;
}

ChannelSet draw_initial(const ChannelParams& params, RandomStream& rng) {
    params.validate();
    const std::size_t k = params.k_users;
    ChannelSet set;
    set.h = draw_gaussian(k, params.n_b, params.l_k, rng);
    set.h_bb = draw_rician(params.n_b, params.n_b, params.kappa, params.l_bb, rng);
    const ComplexMatrix ue_si = draw_rician(k, 1, params.kappa, params.l_kk, rng);
    set.h_kk = ComplexMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        set.h_kk(i, i) = ue_si(i, 0);
    set.h_in = ComplexMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j)
                set.h_in(i, j) = rng.complex_normal(params.l_in);
    return set;
}

double jakes_rho(double f_d, double t_c) {
    if (!(f_d >= 0.0) || !(t_c > 0.0))
        throw ContractError("jakes_rho: requires f_d >= 0 and T_c > 0");
    return numerics::bessel_j0(2.0 * std::numbers::pi * f_d * t_c);
}

ChannelSet evolve(const ChannelSet& prev, double rho, const ChannelParams& params, RandomStream& rng) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw ContractError("evolve: rho must lie in [-1, 1]");
    const double innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    const std::size_t k = prev.h.rows();

    ChannelSet next;
    const ComplexMatrix e = draw_gaussian(k, prev.h.cols(), params.l_k, rng);
    next.h = scale_add(rho, prev.h, innovation, e);

    ComplexMatrix e_in(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j)
                e_in(i, j) = rng.complex_normal(params.l_in);
    next.h_in = scale_add(rho, prev.h_in, innovation, e_in);

    next.h_bb = prev.h_bb;
    next.h_kk = prev.h_kk;
    return next;
}

} // namespace fdmimo::channel

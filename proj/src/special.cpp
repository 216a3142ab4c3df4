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

#include "fdmimo/numerics.hpp"

#include <cmath>
#include <numbers>

namespace fdmimo::numerics {

namespace {

// Below this the Maclaurin series loses < 1e-12 to cancellation; above it the
// Hankel expansion is accurate to < 1e-10.
constexpr double kSeriesLimit = 12.0;

double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)))
            break;
    }
    return sum;
}

double j0_asymptotic(double x) {
    // J0(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w),  w = x - pi/4,
    // term_k = a_k / x^k with a_k = a_{k-1} * (-(2k-1)^2) / (8k).
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
        if (std::abs(term) > last)
            break; // asymptotic series started diverging
        last = std::abs(term);
        // P collects even k with sign (-1)^(k/2); Q odd k with sign (-1)^((k-1)/2).
        const double signed_term = (((k / 2) % 2) == 0 ? term : -term);
        if (k % 2 == 0)
            p += signed_term;
        else
            q += signed_term;
        if (last < 1e-17)
            break;
    }
    const double w = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

} // namespace

double bessel_j0(double x) {
    const double ax = std::abs(x);
    return ax < kSeriesLimit ? j0_series(ax) : j0_asymptotic(ax);
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace fdmimo::numerics

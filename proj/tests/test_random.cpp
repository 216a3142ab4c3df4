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

#include "fdmimo/random.hpp"

#include <doctest.h>

#include <cmath>
#include <unordered_set>

using namespace fdmimo;

TEST_CASE("philox4x32-10 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          Philox4x32Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          Philox4x32Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          Philox4x32Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are deterministic and distinct") {
    RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        differ_c |= x != c();
        differ_d |= x != d();
    }
    CHECK(differ_c);
    CHECK(differ_d);
}

TEST_CASE("per-trial stream prefixes never collide") {
    // 1e4 trial streams under one key, 4 words each.
    const std::uint64_t key = derive_seed(1, {2, 3});
    std::unordered_set<std::uint64_t> seen;
    std::size_t total = 0;
    for (std::uint64_t trial = 0; trial < 10000; ++trial) {
        RandomStream s(key, trial);
        for (int i = 0; i < 4; ++i) {
            seen.insert(s());
            ++total;
        }
    }
    CHECK(seen.size() == total);
}

TEST_CASE("derived seeds depend on every word and their order") {
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(2, {2, 3}));
    CHECK(derive_seed(1, {2}) != derive_seed(1, {2, 0}));
    CHECK(derive_seed(5, {6}) == derive_seed(5, {6}));
}

TEST_CASE("uniform and normal moments") {
    RandomStream s(9, 0);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0;
    double cre = 0, cim = 0, cpow = 0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        su += u;
        const double z = s.normal();
        sn += z;
        sn2 += z * z;
        const auto c = s.complex_normal(2.0);
        cre += c.real() * c.real();
        cim += c.imag() * c.imag();
        cpow += std::norm(c);
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(cpow / n == doctest::Approx(2.0).epsilon(0.02));
    CHECK(cre / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(cim / n == doctest::Approx(1.0).epsilon(0.02));
}

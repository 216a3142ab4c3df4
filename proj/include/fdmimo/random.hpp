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

#ifndef FDMIMO_RANDOM_HPP
#define FDMIMO_RANDOM_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace fdmimo {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
Philox4x32Counter philox4x32_10(Philox4x32Counter counter, Philox4x32Key key) noexcept;

/// SplitMix64-style mixing of a seed with an ordered list of domain words.
/// Used to derive independent per-point and per-trial keys.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> words) noexcept;

/// Counter-based random stream. The 64-bit key selects the stream family and
/// `stream_id` occupies the upper half of the 128-bit counter, so distinct
/// (key, stream_id) pairs never share a block.
///
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t key, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept;

    // Uniform on the open interval (0, 1).
    double uniform() noexcept;
    double normal() noexcept;
    // Circularly-symmetric CN(0, variance): two independent reals scaled by sqrt(variance / 2).
    std::complex<double> complex_normal(double variance) noexcept;

  private:
    void refill() noexcept;

    Philox4x32Key key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

} // namespace fdmimo

#endif

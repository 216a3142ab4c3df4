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

#ifndef FDMIMO_CONFIG_HPP
#define FDMIMO_CONFIG_HPP

#include "fdmimo/link.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdmimo::config {

/// A scheme to simulate. `taps` overrides the tap budget for SCDC ("SCDC-32").
struct SchemeEntry {
    link::Scheme scheme = link::Scheme::scdc;
    std::optional<std::size_t> taps;

    std::string label() const;
    bool operator==(const SchemeEntry&) const = default;
};

std::optional<SchemeEntry> parse_scheme_entry(std::string_view text);

enum class SweepVariable { p_b_dbm, k_users, f_d };

std::string_view sweep_variable_name(SweepVariable v) noexcept;

/// Scenario in configuration units (dB, dBm, Hz, s). Pathlosses are losses:
/// a value of 110 means a linear power gain of 1e-11.
struct ScenarioConfig {
    // [channel]
    std::size_t n_b = 8;
    std::size_t k_users = 4;
    double pathloss_db = 110.0;
    double si_pathloss_bs_db = 40.0;
    double si_pathloss_ue_db = 40.0;
    double internode_pathloss_db = 110.0;
    double kappa_db = 30.0;
    double f_d = 50.0;
    double t_c = 1e-3;
    // [link]
    double p_b_dbm = 40.0;
    double p_k_dbm = 10.0;
    double noise_bs_dbm = -100.0;
    double noise_ue_dbm = -100.0;
    double lambda_b_dbm = -50.0;
    double lambda_k_dbm = -50.0;
    std::size_t taps = 64;
    std::size_t t = 400;
    double training_fraction = 0.1;
    std::size_t m_b = 0; // 0: auto (one stream per user)
    double tau_si = 0.0;
    // [quantizer]
    bool quantize = true;
    double attenuation_step_db = 0.02;
    double phase_step_deg = 0.13;
    // [sweep]
    SweepVariable sweep_variable = SweepVariable::p_b_dbm;
    std::vector<double> sweep_values{10, 15, 20, 25, 30, 35, 40};
    // [run]
    std::vector<SchemeEntry> schemes{{link::Scheme::scdc, 64}, {link::Scheme::scdc, 32}, {link::Scheme::scdc, 8},
                                     {link::Scheme::sbfd, {}},  {link::Scheme::hd, {}},    {link::Scheme::ideal, {}}};
    std::size_t runs = 1000;
    std::uint64_t seed = 1;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Parses `key = value` lines grouped under [section] headers; '#' starts a
/// comment. Omitted keys keep their defaults. The result is validated.
/// Throws ConfigError carrying the offending line number.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` or `section.key=value` override.
void apply_override(ScenarioConfig& cfg, std::string_view assignment);

/// Checks every invariant, including module preconditions at each sweep point.
void validate(const ScenarioConfig& cfg);

/// Full resolved configuration in the file format; parse_config(serialize(c)) == c.
std::string serialize(const ScenarioConfig& cfg);

/// Every recognized key as "section.key".
std::vector<std::string> known_keys();

/// Physical scenario at one sweep value for one scheme entry.
link::LinkScenario scenario_at(const ScenarioConfig& cfg, double sweep_value, const SchemeEntry& entry);

/// Tap count reported for a scheme: its budget for SCDC, N_b^2 for the
/// full-tap schemes, 0 for HD.
std::size_t reported_taps(const link::LinkScenario& scn, const SchemeEntry& entry);

} // namespace fdmimo::config

#endif

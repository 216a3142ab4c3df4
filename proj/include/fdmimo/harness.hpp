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

#ifndef FDMIMO_HARNESS_HPP
#define FDMIMO_HARNESS_HPP

#include "fdmimo/config.hpp"
#include "fdmimo/link.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdmimo::harness {

/// A trial failed with a module error; the message names the trial and seed.
class TrialError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PointStats {
    double mean = 0.0;
    double std_error = 0.0;
    double infeasible_fraction = 0.0;
    std::size_t runs = 0;
};

/// Key of the per-trial channel stream; shared by every scheme and sweep point.
std::uint64_t channel_key(std::uint64_t seed) noexcept;
/// Key of the scheme-side stream for one (sweep point, scheme) cell.
std::uint64_t point_seed(std::uint64_t seed, std::size_t sweep_index, std::size_t scheme_index) noexcept;

struct PointJob {
    link::LinkScenario scenario;
    link::Scheme scheme = link::Scheme::scdc;
    std::size_t runs = 1;
    std::size_t first_trial = 0;   // trial indices [first_trial, first_trial + runs)
    std::uint64_t channel_key = 0;
    std::uint64_t point_seed = 0;
};

/// Outcome of trial `index` of a job; identical regardless of worker count.
link::SlotOutcome run_single(const PointJob& job, std::size_t index);

/// Averages `runs` trials; infeasible trials count as rate 0.
/// workers = 0 selects the hardware concurrency.
PointStats run_point(const PointJob& job, std::size_t workers = 1);

struct SweepRow {
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string scheme;
    std::size_t taps = 0;
    PointStats stats;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    std::size_t workers = 1;
    // Called after each finished point.
    std::function<void(const SweepRow&, std::size_t done, std::size_t total)> on_point;
};

/// Sweep values x schemes, rows ordered by sweep value then scheme.
SweepResult run_sweep(const config::ScenarioConfig& cfg, const SweepOptions& options = {});

void write_csv(const SweepResult& result, std::ostream& out);
/// Throws std::runtime_error when the destination cannot be written.
void write_csv(const SweepResult& result, const std::filesystem::path& path);

/// Path of the resolved-config file accompanying a CSV.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);
void write_sidecar(const config::ScenarioConfig& cfg, const std::filesystem::path& path);

} // namespace fdmimo::harness

#endif

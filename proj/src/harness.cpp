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

#include "fdmimo/harness.hpp"

#include "fdmimo/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

namespace fdmimo::harness {

namespace {

constexpr std::uint64_t kChannelDomain = 0x6368616e6e656c73ULL; // "channels"
constexpr std::uint64_t kPointDomain = 0x706f696e74736565ULL;   // "pointsee"

std::string format6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::uint64_t channel_key(std::uint64_t seed) noexcept { return derive_seed(seed, {kChannelDomain}); }

std::uint64_t point_seed(std::uint64_t seed, std::size_t sweep_index, std::size_t scheme_index) noexcept {
    return derive_seed(seed, {kPointDomain, sweep_index, scheme_index});
}

link::SlotOutcome run_single(const PointJob& job, std::size_t index) {
    RandomStream channel_rng(job.channel_key, index);
    const link::TrialChannels ch = link::draw_trial_channels(job.scenario, channel_rng);
    RandomStream scheme_rng(job.point_seed, index);
    return link::run_trial(job.scheme, job.scenario, ch, scheme_rng);
}

PointStats run_point(const PointJob& job, std::size_t workers) {
    if (job.runs == 0)
        throw std::invalid_argument("run_point: runs must be >= 1");
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, job.runs);

    std::vector<double> rates(job.runs, 0.0);
    std::vector<char> feasible(job.runs, 0);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_trial = job.runs;
    std::string error_text;

    auto worker = [&] {
        for (std::size_t i = next++; i < job.runs; i = next++) {
            const std::size_t trial = job.first_trial + i;
            try {
                const link::SlotOutcome o = run_single(job, trial);
                rates[i] = o.feasible ? o.rate_bits_per_use : 0.0;
                feasible[i] = o.feasible ? 1 : 0;
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (i < error_trial) {
                    error_trial = i;
                    error_text = "trial " + std::to_string(trial) + " of " + std::string(link::scheme_name(job.scheme)) +
                                 " (point seed " + std::to_string(job.point_seed) + ", channel key " +
                                 std::to_string(job.channel_key) + ") failed: " + e.what();
                }
                next = job.runs; // stop handing out work
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (error_trial < job.runs)
        throw TrialError(error_text);

    // Fixed summation order keeps results independent of scheduling.
    PointStats s;
    s.runs = job.runs;
    double sum = 0.0;
    std::size_t infeasible = 0;
    for (std::size_t i = 0; i < job.runs; ++i) {
        sum += rates[i];
        infeasible += feasible[i] ? 0 : 1;
    }
    s.mean = sum / static_cast<double>(job.runs);
    if (job.runs > 1) {
        double ss = 0.0;
        for (double r : rates)
            ss += (r - s.mean) * (r - s.mean);
        s.std_error = std::sqrt(ss / static_cast<double>(job.runs - 1)) / std::sqrt(static_cast<double>(job.runs));
    }
    s.infeasible_fraction = static_cast<double>(infeasible) / static_cast<double>(job.runs);
    return s;
}

SweepResult run_sweep(const config::ScenarioConfig& cfg, const SweepOptions& options) {
    config::validate(cfg);
    SweepResult result;
    const std::size_t total = cfg.sweep_values.size() * cfg.schemes.size();
    const std::string var(config::sweep_variable_name(cfg.sweep_variable));
    for (std::size_t si = 0; si < cfg.sweep_values.size(); ++si) {
        for (std::size_t ci = 0; ci < cfg.schemes.size(); ++ci) {
            const config::SchemeEntry& entry = cfg.schemes[ci];
            PointJob job;
            job.scenario = config::scenario_at(cfg, cfg.sweep_values[si], entry);
            job.scheme = entry.scheme;
            job.runs = cfg.runs;
            job.channel_key = channel_key(cfg.seed);
            job.point_seed = point_seed(cfg.seed, si, ci);

            SweepRow row;
            row.sweep_var = var;
            row.sweep_value = cfg.sweep_values[si];
            row.scheme = entry.label();
            row.taps = config::reported_taps(job.scenario, entry);
            row.seed = job.point_seed;
            row.stats = run_point(job, options.workers);
            result.rows.push_back(row);
            if (options.on_point)
                options.on_point(result.rows.back(), result.rows.size(), total);
        }
    }
    return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << "sweep_var,sweep_value,scheme,taps,mean_rate_bits_per_use,std_error,infeasible_fraction,runs,seed\n";
    for (const SweepRow& r : result.rows) {
        out << r.sweep_var << ',' << format6(r.sweep_value) << ',' << r.scheme << ',' << r.taps << ','
            << format6(r.stats.mean) << ',' << format6(r.stats.std_error) << ',' << format6(r.stats.infeasible_fraction)
            << ',' << r.stats.runs << ',' << r.seed << '\n';
    }
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(result, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p += ".resolved.cfg";
    return p;
}

void write_sidecar(const config::ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << "# resolved configuration\n" << config::serialize(cfg);
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace fdmimo::harness

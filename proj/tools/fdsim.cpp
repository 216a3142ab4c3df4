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

// fdsim: command-line front end of the full-duplex MU-MIMO link simulator.

#include "fdmimo/config.hpp"
#include "fdmimo/errors.hpp"
#include "fdmimo/harness.hpp"
#include "fdmimo/kernels.hpp"
#include "fdmimo/selftest.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fdmimo;

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
};

config::ScenarioConfig resolve(const Common& c) {
    config::ScenarioConfig cfg = c.config_path.empty() ? config::ScenarioConfig{} : config::load_config(c.config_path);
    for (const std::string& o : c.overrides)
        config::apply_override(cfg, o);
    if (c.seed)
        cfg.seed = *c.seed;
    config::validate(cfg);
    return cfg;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config_path, "Scenario file (key = value under [section] headers)");
    app->add_option("--set", c.overrides, "Override one key: KEY=VALUE or SECTION.KEY=VALUE (repeatable)");
    app->add_option("--seed", c.seed, "Master seed (overrides the config)");
}

int run_sweep_cmd(const Common& common, const std::string& out_path, std::size_t workers) {
    const config::ScenarioConfig cfg = resolve(common);
    // Sidecar first so no CSV can exist without its resolved configuration.
    harness::write_sidecar(cfg, harness::sidecar_path(out_path));
    harness::SweepOptions opts;
    opts.workers = workers;
    opts.on_point = [](const harness::SweepRow& r, std::size_t done, std::size_t total) {
        std::fprintf(stderr, "[%zu/%zu] %s=%g %s: %.4f +/- %.4f bits/use (infeasible %.3f)\n", done, total,
                     r.sweep_var.c_str(), r.sweep_value, r.scheme.c_str(), r.stats.mean, r.stats.std_error,
                     r.stats.infeasible_fraction);
    };
    const harness::SweepResult result = harness::run_sweep(cfg, opts);
    harness::write_csv(result, std::filesystem::path(out_path));
    return 0;
}

int run_trial_cmd(const Common& common, const std::string& scheme_text, const std::string& out_path) {
    const config::ScenarioConfig cfg = resolve(common);
    const auto entry = config::parse_scheme_entry(scheme_text);
    if (!entry)
        throw ConfigError("unknown scheme '" + scheme_text + "' (expected scdc, SCDC-<N>, sbfd, hd or ideal)");
    const double point = cfg.sweep_values.front();
    harness::PointJob job;
    job.scenario = config::scenario_at(cfg, point, *entry);
    job.scenario.validate();
    job.scheme = entry->scheme;
    job.channel_key = harness::channel_key(cfg.seed);
    job.point_seed = harness::point_seed(cfg.seed, 0, 0);
    const link::SlotOutcome o = harness::run_single(job, 0);

    std::ostringstream text;
    text << "scheme             " << entry->label() << '\n'
         << "sweep_point        " << config::sweep_variable_name(cfg.sweep_variable) << " = " << point << '\n'
         << "taps               " << config::reported_taps(job.scenario, *entry) << '\n'
         << "seed               " << cfg.seed << '\n'
         << "feasible           " << (o.feasible ? "true" : "false") << '\n'
         << "rate_bits_per_use  " << o.rate_bits_per_use << '\n'
         << "tau_dl_sq          " << o.tau_dl_sq << '\n'
         << "sigma_r_sq_mW      " << o.sigma_r_sq << '\n'
         << "alpha              " << o.alpha << '\n'
         << "served_users       " << o.served << '\n';

    if (out_path.empty()) {
        std::cout << text.str() << "\n# resolved configuration\n" << config::serialize(cfg);
        return 0;
    }
    harness::write_sidecar(cfg, harness::sidecar_path(out_path));
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!(out << text.str()))
        throw std::runtime_error("cannot write '" + out_path + "'");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Full-duplex MU-MIMO link-level Monte Carlo simulator"};
    app.require_subcommand(1);

    Common sweep_common;
    std::string sweep_out = "sweep.csv";
    std::size_t workers = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV plus resolved config");
    add_common(sweep, sweep_common);
    sweep->add_option("--out", sweep_out, "CSV destination")->capture_default_str();
    sweep->add_option("--workers", workers, "Worker threads per point")->check(CLI::PositiveNumber);

    Common trial_common;
    std::string scheme = "scdc";
    std::string trial_out;
    CLI::App* trial = app.add_subcommand("trial", "Run one seeded trial of one scheme and print the outcome");
    add_common(trial, trial_common);
    trial->add_option("--scheme", scheme, "scdc, SCDC-<N>, sbfd, hd or ideal")->capture_default_str();
    trial->add_option("--out", trial_out, "Write the outcome here instead of stdout");

    CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in closed-form checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        std::cerr << app.help();
        return 1;
    }

    try {
        if (*sweep)
            return run_sweep_cmd(sweep_common, sweep_out, workers);
        if (*trial)
            return run_trial_cmd(trial_common, scheme, trial_out);
        if (*selftest) {
            std::cout << "kernel backend: " << kernels::name(kernels::active_backend()) << '\n';
            return run_selftest(std::cout) == 0 ? 0 : 2;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

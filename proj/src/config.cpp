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

#include "fdmimo/config.hpp"

#include "fdmimo/errors.hpp"
#include "fdmimo/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace fdmimo::config {

std::string SchemeEntry::label() const {
    std::string out(link::scheme_name(scheme));
    if (taps)
        out += "-" + std::to_string(*taps);
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const std::string_view item = trim(s.substr(0, comma));
        if (!item.empty())
            out.push_back(item);
        else if (comma != std::string_view::npos || !out.empty())
            throw ConfigError("empty list element");
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

double parse_double(std::string_view s, std::string_view key) {
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v))
        throw ConfigError(std::string(key) + ": expected a finite number, got '" + std::string(s) + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view s, std::string_view key) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(std::string(key) + ": expected a nonnegative integer, got '" + std::string(s) + "'");
    return v;
}

std::size_t parse_count(std::string_view s, std::string_view key, std::size_t min_value) {
    const std::uint64_t v = parse_u64(s, key);
    if (v < min_value)
        throw ConfigError(std::string(key) + " must be >= " + std::to_string(min_value));
    return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view s, std::string_view key) {
    std::string v(trim(s));
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "yes" || v == "on" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "off" || v == "0")
        return false;
    throw ConfigError(std::string(key) + ": expected true or false, got '" + v + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double require(double v, bool ok, const char* key, const char* what) {
    if (!ok)
        throw ConfigError(std::string(key) + " " + what);
    return v;
}

struct KeyDef {
    const char* section;
    const char* key;
    std::function<void(ScenarioConfig&, std::string_view)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

KeyDef real_key(const char* section, const char* key, double ScenarioConfig::*field, bool positive = false) {
    return {section, key,
            [=](ScenarioConfig& c, std::string_view v) {
                const double x = parse_double(v, key);
                c.*field = positive ? require(x, x > 0.0, key, "must be positive") : x;
            },
            [=](const ScenarioConfig& c) { return format_double(c.*field); }};
}

KeyDef count_key(const char* section, const char* key, std::size_t ScenarioConfig::*field, std::size_t min_value) {
    return {section, key, [=](ScenarioConfig& c, std::string_view v) { c.*field = parse_count(v, key, min_value); },
            [=](const ScenarioConfig& c) { return std::to_string(c.*field); }};
}

const std::vector<KeyDef>& key_table() {
    static const std::vector<KeyDef> table = [] {
        std::vector<KeyDef> t;
        t.push_back(count_key("channel", "N_b", &ScenarioConfig::n_b, 1));
        t.push_back(count_key("channel", "K", &ScenarioConfig::k_users, 1));
        t.push_back(real_key("channel", "pathloss_dB", &ScenarioConfig::pathloss_db));
        t.push_back(real_key("channel", "si_pathloss_bs_dB", &ScenarioConfig::si_pathloss_bs_db));
        t.push_back(real_key("channel", "si_pathloss_ue_dB", &ScenarioConfig::si_pathloss_ue_db));
        t.push_back(real_key("channel", "internode_pathloss_dB", &ScenarioConfig::internode_pathloss_db));
        t.push_back(real_key("channel", "kappa_dB", &ScenarioConfig::kappa_db));
        t.push_back({"channel", "f_d",
                     [](ScenarioConfig& c, std::string_view v) {
                         const double x = parse_double(v, "f_d");
                         c.f_d = require(x, x >= 0.0, "f_d", "must be >= 0");
                     },
                     [](const ScenarioConfig& c) { return format_double(c.f_d); }});
        t.push_back(real_key("channel", "T_c", &ScenarioConfig::t_c, true));

        t.push_back(real_key("link", "P_b_dBm", &ScenarioConfig::p_b_dbm));
        t.push_back(real_key("link", "P_k_dBm", &ScenarioConfig::p_k_dbm));
        t.push_back(real_key("link", "noise_bs_dBm", &ScenarioConfig::noise_bs_dbm));
        t.push_back(real_key("link", "noise_ue_dBm", &ScenarioConfig::noise_ue_dbm));
        t.push_back(real_key("link", "lambda_b_dBm", &ScenarioConfig::lambda_b_dbm));
        t.push_back(real_key("link", "lambda_k_dBm", &ScenarioConfig::lambda_k_dbm));
        t.push_back(count_key("link", "N", &ScenarioConfig::taps, 0));
        t.push_back(count_key("link", "T", &ScenarioConfig::t, 1));
        t.push_back({"link", "training_fraction",
                     [](ScenarioConfig& c, std::string_view v) {
                         const double x = parse_double(v, "training_fraction");
                         c.training_fraction =
                             require(x, x > 0.0 && x < 1.0, "training_fraction", "must lie in (0, 1)");
                     },
                     [](const ScenarioConfig& c) { return format_double(c.training_fraction); }});
        t.push_back({"link", "m_b",
                     [](ScenarioConfig& c, std::string_view v) {
                         c.m_b = trim(v) == "auto" ? 0 : parse_count(v, "m_b", 1);
                     },
                     [](const ScenarioConfig& c) { return c.m_b == 0 ? std::string("auto") : std::to_string(c.m_b); }});
        t.push_back({"link", "tau_si",
                     [](ScenarioConfig& c, std::string_view v) {
                         const double x = parse_double(v, "tau_si");
                         c.tau_si = require(x, x >= 0.0 && x <= 1.0, "tau_si", "must lie in [0, 1]");
                     },
                     [](const ScenarioConfig& c) { return format_double(c.tau_si); }});

        t.push_back({"quantizer", "quantize",
                     [](ScenarioConfig& c, std::string_view v) { c.quantize = parse_bool(v, "quantize"); },
                     [](const ScenarioConfig& c) { return std::string(c.quantize ? "true" : "false"); }});
        t.push_back(real_key("quantizer", "attenuation_step_dB", &ScenarioConfig::attenuation_step_db, true));
        t.push_back(real_key("quantizer", "phase_step_deg", &ScenarioConfig::phase_step_deg, true));

        t.push_back({"sweep", "variable",
                     [](ScenarioConfig& c, std::string_view v) {
                         const std::string_view s = trim(v);
                         if (s == "P_b_dBm")
                             c.sweep_variable = SweepVariable::p_b_dbm;
                         else if (s == "K")
                             c.sweep_variable = SweepVariable::k_users;
                         else if (s == "f_d")
                             c.sweep_variable = SweepVariable::f_d;
                         else
                             throw ConfigError("variable: expected one of P_b_dBm, K, f_d, got '" + std::string(s) + "'");
                     },
                     [](const ScenarioConfig& c) { return std::string(sweep_variable_name(c.sweep_variable)); }});
        t.push_back({"sweep", "values",
                     [](ScenarioConfig& c, std::string_view v) {
                         std::vector<double> values;
                         for (std::string_view item : split_list(v))
                             values.push_back(parse_double(item, "values"));
                         if (values.empty())
                             throw ConfigError("values must not be empty");
                         for (std::size_t i = 1; i < values.size(); ++i)
                             if (!(values[i] > values[i - 1]))
                                 throw ConfigError("values must be strictly increasing");
                         c.sweep_values = std::move(values);
                     },
                     [](const ScenarioConfig& c) {
                         std::string out;
                         for (std::size_t i = 0; i < c.sweep_values.size(); ++i)
                             out += (i ? ", " : "") + format_double(c.sweep_values[i]);
                         return out;
                     }});

        t.push_back({"run", "schemes",
                     [](ScenarioConfig& c, std::string_view v) {
                         std::vector<SchemeEntry> entries;
                         for (std::string_view item : split_list(v)) {
                             const auto e = parse_scheme_entry(item);
                             if (!e)
                                 throw ConfigError("schemes: unknown scheme '" + std::string(item) + "'");
                             entries.push_back(*e);
                         }
                         if (entries.empty())
                             throw ConfigError("schemes must not be empty");
                         c.schemes = std::move(entries);
                     },
                     [](const ScenarioConfig& c) {
                         std::string out;
                         for (std::size_t i = 0; i < c.schemes.size(); ++i)
                             out += (i ? ", " : "") + c.schemes[i].label();
                         return out;
                     }});
        t.push_back(count_key("run", "runs", &ScenarioConfig::runs, 1));
        t.push_back({"run", "seed", [](ScenarioConfig& c, std::string_view v) { c.seed = parse_u64(v, "seed"); },
                     [](const ScenarioConfig& c) { return std::to_string(c.seed); }});
        return t;
    }();
    return table;
}

const KeyDef* find_key(std::string_view section, std::string_view key) {
    for (const KeyDef& d : key_table())
        if (d.key == key && (section.empty() || d.section == section))
            return &d;
    return nullptr;
}

} // namespace

std::optional<SchemeEntry> parse_scheme_entry(std::string_view text) {
    text = trim(text);
    const auto dash = text.find('-');
    const auto scheme = link::parse_scheme(text.substr(0, dash));
    if (!scheme)
        return std::nullopt;
    SchemeEntry e{*scheme, {}};
    if (dash != std::string_view::npos) {
        if (*scheme != link::Scheme::scdc)
            return std::nullopt;
        const std::string_view n = text.substr(dash + 1);
        std::size_t taps = 0;
        const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), taps);
        if (ec != std::errc{} || ptr != n.data() + n.size() || n.empty())
            return std::nullopt;
        e.taps = taps;
    }
    return e;
}

std::string_view sweep_variable_name(SweepVariable v) noexcept {
    switch (v) {
    case SweepVariable::p_b_dbm:
        return "P_b_dBm";
    case SweepVariable::k_users:
        return "K";
    case SweepVariable::f_d:
        return "f_d";
    }
    return "?";
}

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig cfg;
    std::string section;
    std::size_t line_no = 0;
    std::vector<std::string> seen;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header", line_no);
            section = std::string(trim(line.substr(1, line.size() - 2)));
            const bool known = std::any_of(key_table().begin(), key_table().end(),
                                           [&](const KeyDef& d) { return d.section == section; });
            if (!known)
                throw ConfigError("unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected key = value", line_no);
        const std::string_view key = trim(line.substr(0, eq));
        if (section.empty())
            throw ConfigError("key '" + std::string(key) + "' appears before any [section]", line_no);
        const KeyDef* def = find_key(section, key);
        if (!def)
            throw ConfigError("unknown key '" + std::string(key) + "' in [" + section + "]", line_no);
        const std::string full = section + "." + std::string(key);
        if (std::find(seen.begin(), seen.end(), full) != seen.end())
            throw ConfigError("duplicate key '" + std::string(key) + "'", line_no);
        seen.push_back(full);
        try {
            def->set(cfg, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), line_no);
        }
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_override(ScenarioConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    std::string_view name = trim(assignment.substr(0, eq));
    std::string_view section;
    if (const auto dot = name.find('.'); dot != std::string_view::npos) {
        section = name.substr(0, dot);
        name = name.substr(dot + 1);
    }
    const KeyDef* def = find_key(section, name);
    if (!def)
        throw ConfigError("unknown config key '" + std::string(trim(assignment.substr(0, eq))) + "'");
    def->set(cfg, assignment.substr(eq + 1));
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.runs < 1)
        throw ConfigError("runs must be >= 1");
    if (cfg.sweep_values.empty())
        throw ConfigError("values must not be empty");
    for (std::size_t i = 1; i < cfg.sweep_values.size(); ++i)
        if (!(cfg.sweep_values[i] > cfg.sweep_values[i - 1]))
            throw ConfigError("values must be strictly increasing");
    if (cfg.schemes.empty())
        throw ConfigError("schemes must not be empty");
    for (double v : cfg.sweep_values) {
        if (cfg.sweep_variable == SweepVariable::k_users && (v < 1.0 || v != std::floor(v)))
            throw ConfigError("values: K sweep values must be positive integers");
        if (cfg.sweep_variable == SweepVariable::f_d && v < 0.0)
            throw ConfigError("values: f_d sweep values must be >= 0");
        for (const SchemeEntry& e : cfg.schemes) {
            try {
                scenario_at(cfg, v, e).validate();
            } catch (const std::exception& ex) {
                throw ConfigError(std::string("invalid scenario at ") + std::string(sweep_variable_name(cfg.sweep_variable)) +
                                  " = " + format_double(v) + " for " + e.label() + ": " + ex.what());
            }
        }
    }
}

std::string serialize(const ScenarioConfig& cfg) {
    std::string out;
    std::string section;
    for (const KeyDef& d : key_table()) {
        if (d.section != section) {
            if (!section.empty())
                out += "\n";
            section = d.section;
            out += "[" + section + "]\n";
        }
        out += std::string(d.key) + " = " + d.get(cfg) + "\n";
    }
    return out;
}

std::vector<std::string> known_keys() {
    std::vector<std::string> keys;
    for (const KeyDef& d : key_table())
        keys.push_back(std::string(d.section) + "." + d.key);
    return keys;
}

link::LinkScenario scenario_at(const ScenarioConfig& cfg, double sweep_value, const SchemeEntry& entry) {
    using numerics::db_to_linear;
    using numerics::dbm_to_mw;
    double p_b_dbm = cfg.p_b_dbm;
    std::size_t k = cfg.k_users;
    double f_d = cfg.f_d;
    switch (cfg.sweep_variable) {
    case SweepVariable::p_b_dbm:
        p_b_dbm = sweep_value;
        break;
    case SweepVariable::k_users:
        k = static_cast<std::size_t>(std::llround(std::max(sweep_value, 0.0)));
        break;
    case SweepVariable::f_d:
        f_d = sweep_value;
        break;
    }

    link::LinkScenario s;
    s.channel.n_b = cfg.n_b;
    s.channel.k_users = k;
    s.channel.l_k = db_to_linear(-cfg.pathloss_db);
    s.channel.l_bb = db_to_linear(-cfg.si_pathloss_bs_db);
    s.channel.l_kk = db_to_linear(-cfg.si_pathloss_ue_db);
    s.channel.l_in = db_to_linear(-cfg.internode_pathloss_db);
    s.channel.kappa = db_to_linear(cfg.kappa_db);
    s.channel.f_d = f_d;
    s.channel.t_c = cfg.t_c;

    auto& p = s.scheme;
    p.training_fraction = cfg.training_fraction;
    p.p_b = dbm_to_mw(p_b_dbm);
    p.p_k = dbm_to_mw(cfg.p_k_dbm);
    p.sigma_b_sq = dbm_to_mw(cfg.noise_bs_dbm);
    p.sigma_k_sq = dbm_to_mw(cfg.noise_ue_dbm);
    p.lambda_b = dbm_to_mw(cfg.lambda_b_dbm);
    p.lambda_k = dbm_to_mw(cfg.lambda_k_dbm);
    p.taps = entry.taps.value_or(cfg.taps);
    p.t = cfg.t;
    p.m_b = cfg.m_b;
    p.quantizer = cfg.quantize ? cancellation::Quantizer(cancellation::QuantizerSpec{cfg.attenuation_step_db, cfg.phase_step_deg})
                               : std::nullopt;
    p.tau_si = cfg.tau_si;
    return s;
}

std::size_t reported_taps(const link::LinkScenario& scn, const SchemeEntry& entry) {
    switch (entry.scheme) {
    case link::Scheme::scdc:
        return scn.scheme.taps;
    case link::Scheme::hd:
        return 0;
    case link::Scheme::sbfd:
    case link::Scheme::ideal:
        return scn.channel.n_b * scn.channel.n_b;
    }
    return 0;
}

} // namespace fdmimo::config

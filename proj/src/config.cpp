// SPDX-License-Identifier: Apache-2.0
//
// thzap - indoor terahertz access-point placement simulator
// Copyright (C) 2026 The thzap authors
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

#include "thzap/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <variant>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "thzap/format.hpp"
#include "thzap/reporting.hpp"

namespace thzap
{

namespace
{

using Member = std::variant<double ExperimentConfig::*, int ExperimentConfig::*, std::uint64_t ExperimentConfig::*,
                            bool ExperimentConfig::*, std::string ExperimentConfig::*,
                            std::optional<double> ExperimentConfig::*>;

struct Field
{
    const char *section;
    const char *key;
    Member member;
};

using EC = ExperimentConfig;

// Table-1 names are kept verbatim; the rest are simulator knobs.
const std::array fields = {
    Field{"radio", "f_c_ghz", &EC::f_c_ghz},
    Field{"radio", "bandwidth_ghz", &EC::bandwidth_ghz},
    Field{"radio", "p_o_dbm", &EC::p_o_dbm},
    Field{"radio", "beamwidth_deg", &EC::beamwidth_deg},
    Field{"radio", "humidity_pct", &EC::humidity_pct},
    Field{"radio", "temperature_c", &EC::temperature_c},
    Field{"radio", "nf_db_hz", &EC::nf_db_hz},
    Field{"radio", "tau_per_m", &EC::tau_per_m},
    Field{"radio", "absorption_table", &EC::absorption_table},
    Field{"placement", "placement_type", &EC::placement_type},
    Field{"placement", "n_aps", &EC::n_aps},
    Field{"placement", "t_align_ms", &EC::t_align_ms},
    Field{"placement", "effective_height_m", &EC::effective_height_m},
    Field{"placement", "reference_distance", &EC::reference_distance},
    Field{"placement", "reference_grid", &EC::reference_grid},
    Field{"placement", "hanging_height_m", &EC::hanging_height_m},
    Field{"placement", "lamp_height_m", &EC::lamp_height_m},
    Field{"placement", "cluster_spacing_m", &EC::cluster_spacing_m},
    Field{"room", "room_l_m", &EC::room_l_m},
    Field{"room", "room_w_m", &EC::room_w_m},
    Field{"room", "room_h_m", &EC::room_h_m},
    Field{"users", "n_users", &EC::n_users},
    Field{"users", "velocity_mps_mean", &EC::velocity_mps_mean},
    Field{"users", "velocity_mps_span", &EC::velocity_mps_span},
    Field{"users", "pause_s", &EC::pause_s},
    Field{"users", "user_height_m", &EC::user_height_m},
    Field{"users", "user_height_span_m", &EC::user_height_span_m},
    Field{"users", "user_width_m", &EC::user_width_m},
    Field{"users", "rate_min_gbps", &EC::rate_min_gbps},
    Field{"users", "rate_max_gbps", &EC::rate_max_gbps},
    Field{"users", "rate_constant_gbps", &EC::rate_constant_gbps},
    Field{"users", "stationary_users", &EC::stationary_users},
    Field{"simulation", "seed", &EC::seed},
    Field{"simulation", "duration_s", &EC::duration_s},
    Field{"simulation", "dt_ms", &EC::dt_ms},
    Field{"simulation", "blockage", &EC::blockage},
    Field{"simulation", "multiplexing", &EC::multiplexing},
    Field{"simulation", "realign_interval_ms", &EC::realign_interval_ms},
};

const std::array<const char *, 5> sections = {"radio", "placement", "room", "users", "simulation"};

const Field *find_field(std::string_view key)
{
    for (const Field &f : fields)
        if (key == f.key)
            return &f;
    return nullptr;
}

template <typename Int>
Int parse_integer(const std::string &key, std::string_view v)
{
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(key, "expected an integer, got '" + std::string(v) + "'");
    return out;
}

bool parse_bool(const std::string &key, std::string_view v)
{
    if (v == "on" || v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "off" || v == "false" || v == "no" || v == "0")
        return false;
    throw ConfigError(key, "expected on/off, got '" + std::string(v) + "'");
}

double parse_real(const std::string &key, std::string_view v)
{
    try
    {
        return parse_number(v);
    }
    catch (const std::invalid_argument &)
    {
        throw ConfigError(key, "expected a number, got '" + std::string(v) + "'");
    }
}

void assign(ExperimentConfig &c, const Field &f, const std::string &raw)
{
    const std::string key = f.key;
    std::visit(
        [&](auto member)
        {
            using T = std::remove_reference_t<decltype(c.*member)>;
            if constexpr (std::is_same_v<T, double>)
                c.*member = parse_real(key, raw);
            else if constexpr (std::is_same_v<T, int>)
                c.*member = parse_integer<int>(key, raw);
            else if constexpr (std::is_same_v<T, std::uint64_t>)
                c.*member = parse_integer<std::uint64_t>(key, raw);
            else if constexpr (std::is_same_v<T, bool>)
                c.*member = parse_bool(key, raw);
            else if constexpr (std::is_same_v<T, std::string>)
                c.*member = raw;
            else if (raw.empty() || raw == "none")
                c.*member = std::nullopt;
            else
                c.*member = parse_real(key, raw);
        },
        f.member);
}

std::string render(const ExperimentConfig &c, const Field &f)
{
    return std::visit(
        [&](auto member) -> std::string
        {
            using T = std::remove_cvref_t<decltype(c.*member)>;
            const T &v = c.*member;
            if constexpr (std::is_same_v<T, double>)
                return format_number(v);
            else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "on" : "off";
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else
                return v ? format_number(*v) : std::string("none");
        },
        f.member);
}

void require(bool ok, const char *field, const std::string &message)
{
    if (!ok)
        throw ConfigError(field, message);
}

} // namespace

ExperimentConfig parse_config(std::string_view text)
{
    boost::property_tree::ptree tree;
    std::istringstream in{std::string(text)};
    try
    {
        boost::property_tree::ini_parser::read_ini(in, tree);
    }
    catch (const boost::property_tree::ini_parser_error &e)
    {
        throw ConfigError("config", e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    ExperimentConfig c;
    auto handle = [&](const std::string &section, const std::string &key, const std::string &value)
    {
        const Field *f = find_field(key);
        if (!f)
            throw ConfigError(key, "unknown key");
        if (!section.empty() && section != f->section)
            throw ConfigError(key, "belongs in section [" + std::string(f->section) + "], found in [" + section + "]");
        assign(c, *f, value);
    };
    for (const auto &[name, node] : tree)
    {
        if (node.empty())
        {
            handle("", name, node.data());
            continue;
        }
        if (std::find(sections.begin(), sections.end(), name) == sections.end())
            throw ConfigError(name, "unknown section");
        for (const auto &[key, leaf] : node)
            handle(name, key, leaf.data());
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::string text;
    try
    {
        text = read_file(path);
    }
    catch (const std::exception &e)
    {
        throw ConfigError("config", e.what());
    }
    return parse_config(text);
}

std::string to_config_text(const ExperimentConfig &config)
{
    std::string out;
    for (const char *section : sections)
    {
        if (!out.empty())
            out += '\n';
        out += '[';
        out += section;
        out += "]\n";
        for (const Field &f : fields)
            if (std::string_view(f.section) == section)
                out += std::string(f.key) + " = " + render(config, f) + '\n';
    }
    return out;
}

SimConfig to_sim_config(const ExperimentConfig &c)
{
    require(c.f_c_ghz > 0, "f_c_ghz", "must be positive");
    require(c.bandwidth_ghz > 0, "bandwidth_ghz", "must be positive");
    require(std::isfinite(c.p_o_dbm), "p_o_dbm", "must be finite");
    require(c.beamwidth_deg > 0 && c.beamwidth_deg <= 360, "beamwidth_deg", "must be in (0, 360]");
    require(c.humidity_pct >= 0 && c.humidity_pct <= 100, "humidity_pct", "must be in [0, 100]");
    require(std::isfinite(c.nf_db_hz), "nf_db_hz", "must be finite");
    require(!c.tau_per_m || *c.tau_per_m >= 0, "tau_per_m", "must be non-negative");
    require(c.placement_type.size() == 1, "placement_type", "must be one of A..F");
    require(c.t_align_ms > 0, "t_align_ms", "must be positive");
    require(!c.effective_height_m || *c.effective_height_m > 0, "effective_height_m", "must be positive");
    require(c.reference_distance == "mean" || c.reference_distance == "worst", "reference_distance",
            "must be 'mean' or 'worst'");
    require(c.reference_grid >= 1, "reference_grid", "must be positive");
    require(c.room_l_m > 0, "room_l_m", "must be positive");
    require(c.room_w_m > 0, "room_w_m", "must be positive");
    require(c.room_h_m > 0, "room_h_m", "must be positive");
    require(c.n_users >= 0, "n_users", "must be non-negative");
    require(c.velocity_mps_span >= 0, "velocity_mps_span", "must be non-negative");
    require(c.velocity_mps_mean - c.velocity_mps_span > 0, "velocity_mps_mean", "mean - span must stay positive");
    require(c.pause_s >= 0, "pause_s", "must be non-negative");
    require(c.user_height_m > 0, "user_height_m", "must be positive");
    require(c.user_height_span_m >= 0 && c.user_height_span_m < c.user_height_m, "user_height_span_m",
            "must be in [0, user_height_m)");
    require(c.user_width_m > 0, "user_width_m", "must be positive");
    require(c.rate_min_gbps > 0, "rate_min_gbps", "must be positive");
    require(c.rate_max_gbps >= c.rate_min_gbps, "rate_max_gbps", "must not be below rate_min_gbps");
    require(!c.rate_constant_gbps || *c.rate_constant_gbps > 0, "rate_constant_gbps", "must be positive");
    require(c.effective_height_m || c.room_h_m > c.user_height_m, "room_h_m", "must exceed user_height_m");
    require(c.dt_ms > 0, "dt_ms", "must be positive");
    require(c.duration_s * 1000.0 >= c.dt_ms, "duration_s", "must cover at least one time step");
    require(c.multiplexing == "time_share" || c.multiplexing == "strongest", "multiplexing",
            "must be 'time_share' or 'strongest'");
    require(c.realign_interval_ms >= 0, "realign_interval_ms", "must be non-negative");

    SimConfig s;
    try
    {
        s.placement = placement_from_char(c.placement_type.front());
    }
    catch (const std::invalid_argument &)
    {
        throw ConfigError("placement_type", "must be one of A..F");
    }
    require(s.placement == PlacementType::A || is_supported_ap_count(c.n_aps), "n_aps", "must be one of 4, 8, 12, 16");

    s.room = Room{c.room_l_m, c.room_w_m, c.room_h_m};
    s.n_aps = c.n_aps;
    s.total_power_w = dbm_to_watt(c.p_o_dbm);
    s.link.carrier_hz = c.f_c_ghz * 1e9;
    s.link.bandwidth_hz = c.bandwidth_ghz * 1e9;
    s.link.tx_beamwidth_deg = c.beamwidth_deg;
    s.link.rx_beamwidth_deg = c.beamwidth_deg;
    s.link.noise_psd_w_per_hz = db_to_linear(c.nf_db_hz);
    s.link.humidity = c.humidity_pct / 100.0;
    s.link.temperature_c = c.temperature_c;
    s.link.tau_override = c.tau_per_m;
    if (c.absorption_table != "builtin" && !c.absorption_table.empty())
    {
        try
        {
            s.link.absorption = std::make_shared<AbsorptionTable>(AbsorptionTable::load(c.absorption_table));
        }
        catch (const std::exception &e)
        {
            throw ConfigError("absorption_table", e.what());
        }
    }
    if (!c.tau_per_m)
    {
        const AbsorptionTable &table = s.link.absorption ? *s.link.absorption : AbsorptionTable::builtin();
        require(s.link.carrier_hz >= table.min_frequency_hz() && s.link.carrier_hz <= table.max_frequency_hz(),
                "f_c_ghz", "outside the absorption table range (set tau_per_m to override)");
    }

    s.n_users = c.n_users;
    s.seed = c.seed;
    s.mobility.velocity_mean_mps = c.velocity_mps_mean;
    s.mobility.velocity_span_mps = c.velocity_mps_span;
    s.mobility.pause_s = c.pause_s;
    s.mobility.rate_min_bps = c.rate_min_gbps * 1e9;
    s.mobility.rate_max_bps = c.rate_max_gbps * 1e9;
    if (c.rate_constant_gbps)
        s.mobility.rate_constant_bps = *c.rate_constant_gbps * 1e9;
    s.mobility.user_height_m = c.user_height_m;
    s.mobility.user_height_span_m = c.user_height_span_m;
    s.mobility.user_width_m = c.user_width_m;
    s.mobility.stationary = c.stationary_users;
    s.duration_s = c.duration_s;
    s.dt_s = c.dt_ms / 1000.0;
    s.blockage_enabled = c.blockage;
    s.t_align_s = c.t_align_ms / 1000.0;
    s.effective_height_m = c.effective_height_m;
    s.multiplexing = c.multiplexing == "strongest" ? Multiplexing::StrongestOnly : Multiplexing::TimeShare;
    s.reference_statistic = c.reference_distance == "worst" ? DistanceStatistic::Worst : DistanceStatistic::Mean;
    s.reference_grid = c.reference_grid;
    s.realign_interval_s = c.realign_interval_ms / 1000.0;
    s.hanging_height_m = c.hanging_height_m;
    s.lamp_height_m = c.lamp_height_m;
    s.cluster_spacing_m = c.cluster_spacing_m;

    try
    {
        s.validate();
    }
    catch (const std::exception &e)
    {
        throw ConfigError("config", e.what());
    }
    return s;
}

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data)
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunManifest RunManifest::from(const ExperimentConfig &config)
{
    RunManifest m;
    m.config_text = to_config_text(config);
    m.tool_version = thzap::tool_version;
    m.config_hash = fnv1a_hex(m.config_text);
    m.seed = config.seed;
    return m;
}

nlohmann::json RunManifest::to_json() const
{
    return {{"tool_version", tool_version}, {"config_hash", config_hash}, {"seed", seed}, {"config", config_text}};
}

} // namespace thzap

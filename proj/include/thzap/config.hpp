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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "thzap/simulation.hpp"

namespace thzap
{

inline constexpr const char *tool_version = "1.0.0";

class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {
    }
    const std::string &field() const { return field_; }

private:
    std::string field_;
};

/// Experiment configuration in its file units (GHz, dBm, dB/Hz, percent, ms).
/// Conversion to the linear SI SimConfig happens once, in to_sim_config.
struct ExperimentConfig
{
    // [radio]
    double f_c_ghz = 570.0;
    double bandwidth_ghz = 10.0;
    double p_o_dbm = 0.0;
    double beamwidth_deg = 10.0;
    double humidity_pct = 60.0;
    double temperature_c = 25.0;
    double nf_db_hz = -193.85;
    std::optional<double> tau_per_m;
    std::string absorption_table = "builtin"; // or a path to a table file

    // [placement]
    std::string placement_type = "B";
    int n_aps = 4;
    double t_align_ms = 5.0;
    std::optional<double> effective_height_m;
    std::string reference_distance = "mean";
    int reference_grid = 50;
    double hanging_height_m = 2.0;
    double lamp_height_m = 1.2;
    double cluster_spacing_m = 0.5;

    // [room]
    double room_l_m = 10.0;
    double room_w_m = 10.0;
    double room_h_m = 3.0;

    // [users]
    int n_users = 30;
    double velocity_mps_mean = 1.0;
    double velocity_mps_span = 0.5;
    double pause_s = 0.0;
    double user_height_m = 1.5;
    double user_height_span_m = 0.2;
    double user_width_m = 0.2;
    double rate_min_gbps = 1.0;
    double rate_max_gbps = 10.0;
    std::optional<double> rate_constant_gbps;
    bool stationary_users = false;

    // [simulation]
    std::uint64_t seed = 1;
    double duration_s = 60.0;
    double dt_ms = 10.0;
    bool blockage = false;
    std::string multiplexing = "time_share";
    double realign_interval_ms = 0.0;
};

// key = value lines grouped in [sections]; '#' or ';' comments. Unknown keys, duplicate
// keys and malformed values throw ConfigError naming the key.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path &path);

// Canonical text with every key present; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig &config);

SimConfig to_sim_config(const ExperimentConfig &config);

std::string fnv1a_hex(std::string_view data);

struct RunManifest
{
    std::string config_text;
    std::string tool_version;
    std::string config_hash;
    std::uint64_t seed = 0;

    static RunManifest from(const ExperimentConfig &config);
    nlohmann::json to_json() const;
};

} // namespace thzap

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

#include <catch_amalgamated.hpp>

#include "thzap/config.hpp"

using namespace thzap;
using Catch::Matchers::WithinRel;

namespace
{

std::string field_of(const std::string &text)
{
    try
    {
        to_sim_config(parse_config(text));
    }
    catch (const ConfigError &e)
    {
        return e.field();
    }
    return {};
}

} // namespace

TEST_CASE("defaults follow the reference parameter table")
{
    const SimConfig s = to_sim_config(ExperimentConfig{});
    CHECK(s.link.carrier_hz == 570e9);
    CHECK(s.link.bandwidth_hz == 10e9);
    CHECK_THAT(s.total_power_w, WithinRel(1e-3, 1e-15));
    CHECK(s.n_aps == 4);
    CHECK(s.link.tx_beamwidth_deg == 10.0);
    CHECK(s.link.humidity == 0.6);
    CHECK_THAT(s.link.noise_psd_w_per_hz, WithinRel(std::pow(10.0, -19.385), 1e-14));
    CHECK(s.t_align_s == 5e-3);
    CHECK(s.room.length_m == 10.0);
    CHECK(s.room.height_m == 3.0);
    CHECK(s.n_users == 30);
    CHECK(s.mobility.velocity_mean_mps == 1.0);
    CHECK(s.mobility.velocity_span_mps == 0.5);
    CHECK(s.mobility.user_height_m == 1.5);
    CHECK(s.mobility.user_width_m == 0.2);
    CHECK(s.mobility.rate_min_bps == 1e9);
    CHECK(s.mobility.rate_max_bps == 10e9);
    CHECK(s.dt_s == 0.01);
    CHECK(s.duration_s == 60.0);
}

TEST_CASE("canonical text round trips")
{
    const std::string text = to_config_text(ExperimentConfig{});
    CHECK(to_config_text(parse_config(text)) == text);

    ExperimentConfig c;
    c.tau_per_m = 0.25;
    c.effective_height_m = 4.5;
    c.blockage = true;
    c.placement_type = "C";
    c.seed = 18446744073709551615ULL;
    const std::string t2 = to_config_text(c);
    const ExperimentConfig back = parse_config(t2);
    CHECK(back.tau_per_m == 0.25);
    CHECK(back.effective_height_m == 4.5);
    CHECK(back.blockage);
    CHECK(back.seed == c.seed);
    CHECK(to_config_text(back) == t2);
}

TEST_CASE("partial files keep defaults and accept comments")
{
    const auto c = parse_config("; comment\n# another\n[radio]\nf_c_ghz = 300\n\n[users]\nn_users = 5\n");
    CHECK(c.f_c_ghz == 300.0);
    CHECK(c.n_users == 5);
    CHECK(c.bandwidth_ghz == 10.0);
    CHECK(parse_config("n_aps = 8\n").n_aps == 8);
}

TEST_CASE("errors name the offending field")
{
    auto parse_field = [](const std::string &text)
    {
        try
        {
            parse_config(text);
        }
        catch (const ConfigError &e)
        {
            return e.field();
        }
        return std::string();
    };
    CHECK(parse_field("[radio]\nfrequency = 5\n") == "frequency");
    CHECK(parse_field("[users]\nf_c_ghz = 5\n") == "f_c_ghz");
    CHECK(parse_field("[nowhere]\nf_c_ghz = 5\n") == "nowhere");
    CHECK(parse_field("[radio]\nf_c_ghz = fast\n") == "f_c_ghz");
    CHECK(parse_field("[placement]\nn_aps = 4.5\n") == "n_aps");
    CHECK(parse_field("[simulation]\nblockage = maybe\n") == "blockage");
    CHECK(parse_field("[radio]\nf_c_ghz = 5\nf_c_ghz = 6\n") == "config");

    CHECK(field_of("[placement]\nn_aps = 5\n") == "n_aps");
    CHECK(field_of("[placement]\nplacement_type = Z\n") == "placement_type");
    CHECK(field_of("[radio]\nf_c_ghz = 50\n") == "f_c_ghz");
    CHECK(field_of("[radio]\nbeamwidth_deg = 0\n") == "beamwidth_deg");
    CHECK(field_of("[room]\nroom_h_m = 1.0\n") == "room_h_m");
    CHECK(field_of("[users]\nrate_min_gbps = 20\n") == "rate_max_gbps");
    CHECK(field_of("[simulation]\ndt_ms = 0\n") == "dt_ms");
    CHECK(field_of("[simulation]\nmultiplexing = round_robin\n") == "multiplexing");
    CHECK(field_of("[radio]\nabsorption_table = /no/such/table.csv\n") == "absorption_table");
    CHECK(field_of("[radio]\nf_c_ghz = 50\ntau_per_m = 0.1\n").empty());
    CHECK(field_of("[placement]\nplacement_type = A\nn_aps = 3\n").empty());
}

TEST_CASE("manifest")
{
    ExperimentConfig c;
    const auto m = RunManifest::from(c);
    CHECK(m.config_text == to_config_text(c));
    CHECK(m.tool_version == tool_version);
    CHECK(m.config_hash == fnv1a_hex(m.config_text));
    CHECK(m.config_hash.size() == 16);
    CHECK(m.seed == 1);
    c.seed = 2;
    CHECK(RunManifest::from(c).config_hash != m.config_hash);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    const auto j = m.to_json();
    CHECK(j.at("config_hash") == m.config_hash);
}

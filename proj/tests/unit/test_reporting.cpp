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

#include <filesystem>

#include "thzap/reporting.hpp"

using namespace thzap;
namespace fs = std::filesystem;

namespace
{

fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / "thzap_reporting_test";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<SweepRow> sample_rows()
{
    SimConfig c;
    c.duration_s = 0.5;
    const std::vector<Scenario> s = {{PlacementType::A, 1}, {PlacementType::C, 8}};
    const std::vector<double> h = {1.5, 2.25};
    return sweep_grid(c, s, h, 2);
}

} // namespace

TEST_CASE("results are byte stable and round trip")
{
    const auto rows = sample_rows();
    const auto a = scratch("a.csv");
    const auto b = scratch("b.csv");
    write_results(rows, a);
    write_results(sample_rows(), b);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(a).back() == '\n');
    CHECK(read_file(a).rfind("placement_type,N,H_m,seed,user_coverage,mean_throughput_bps,ap_idle_fraction,handoff_count\n",
                             0) == 0);

    const auto back = read_results(a);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        CHECK(back[i].scenario.label() == rows[i].scenario.label());
        CHECK(back[i].effective_height_m == rows[i].effective_height_m);
        CHECK(back[i].seed == rows[i].seed);
        CHECK(back[i].metrics.user_coverage == rows[i].metrics.user_coverage);
        CHECK(back[i].metrics.mean_throughput_bps == rows[i].metrics.mean_throughput_bps);
        CHECK(back[i].metrics.ap_idle_fraction == rows[i].metrics.ap_idle_fraction);
        CHECK(back[i].metrics.handoff_count == rows[i].metrics.handoff_count);
    }
    CHECK(results_csv(back) == read_file(a));
}

TEST_CASE("empty sweep writes only the header")
{
    CHECK(results_csv({}) ==
          "placement_type,N,H_m,seed,user_coverage,mean_throughput_bps,ap_idle_fraction,handoff_count\n");
    CHECK(parse_results_csv(results_csv({})).empty());
}

TEST_CASE("malformed results are rejected")
{
    CHECK_THROWS(parse_results_csv("nope\n"));
    CHECK_THROWS(parse_results_csv(
        "placement_type,N,H_m,seed,user_coverage,mean_throughput_bps,ap_idle_fraction,handoff_count\nB,4,1.5\n"));
}

TEST_CASE("write failures name the path")
{
    try
    {
        write_file_atomic("/nonexistent_dir_for_thzap/out.csv", "x");
        FAIL("expected an error");
    }
    catch (const std::exception &e)
    {
        CHECK(std::string(e.what()).find("/nonexistent_dir_for_thzap/out.csv") != std::string::npos);
    }
    CHECK_THROWS(read_file("/nonexistent_dir_for_thzap/in.csv"));
}

TEST_CASE("heat maps round trip exactly")
{
    SimConfig c;
    c.placement = PlacementType::C;
    c.room = Room{6.5, 4.0, 3.0};
    const std::vector<BodyCylinder> blockers = {{1, Point2(2.0, 2.0), 0.2, 1.8}};
    const auto grid = heatmap(c, 7.0, 3e9, blockers);
    const auto stem = scratch("heat");
    write_heatmap(grid, stem, {{"note", "test"}});
    const auto back = read_heatmap(stem);
    CHECK(back.resolution_per_m == grid.resolution_per_m);
    CHECK(back.length_m == grid.length_m);
    CHECK(back.width_m == grid.width_m);
    CHECK(back.probe_bps == grid.probe_bps);
    CHECK(back.device_height_m == grid.device_height_m);
    CHECK((back.rate_bps == grid.rate_bps).all());
    CHECK((back.region == grid.region).all());
    CHECK((grid.region == std::uint8_t(Region::Shadow)).any());

    std::string first;
    for (const char *ext : {".csv", "_regions.csv", ".json"})
    {
        fs::path p = stem;
        first += read_file(p += ext);
    }
    write_heatmap(grid, stem, {{"note", "test"}});
    std::string second;
    for (const char *ext : {".csv", "_regions.csv", ".json"})
    {
        fs::path p = stem;
        second += read_file(p += ext);
    }
    CHECK(first == second);
}

TEST_CASE("event and trajectory logs")
{
    const std::vector<Event> events = {{0.01, EventKind::Handoff, 3, 1}, {0.02, EventKind::BlockageStart, 4, 0}};
    CHECK(events_csv(events) == "t_s,event,user,ap\n0.01,handoff,3,1\n0.02,blockage_start,4,0\n");
    const std::vector<TrajectorySample> traj = {{0.5, 0, 1.25, 2.0}};
    CHECK(trajectory_csv(traj) == "t_s,user,x_m,y_m\n0.5,0,1.25,2\n");
}

TEST_CASE("metrics json carries the headline numbers")
{
    SimConfig c;
    c.duration_s = 0.5;
    const auto m = run(c);
    const auto j = metrics_json(m);
    CHECK(j.at("user_coverage").get<double>() == m.user_coverage);
    CHECK(j.at("mean_throughput_bps").get<double>() == m.mean_throughput_bps);
    CHECK(j.at("handoff_count").get<std::int64_t>() == m.handoff_count);
}

TEST_CASE("crossover detection")
{
    const Series b = {{4, 10}, {5, 8}};
    const Series c = {{4, 9}, {5, 9}};
    const auto x = detect_crossover(b, c, "thr", "B4", "C4");
    REQUIRE(x.height_m);
    CHECK(*x.height_m == 4.5);
    CHECK(x.bracket_lo_m == 4.0);
    CHECK(x.bracket_hi_m == 5.0);
    CHECK(x.gap_lo == 1.0);
    CHECK(x.gap_hi == -1.0);

    const auto swapped = detect_crossover(c, b);
    REQUIRE(swapped.height_m);
    CHECK(*swapped.height_m == *x.height_m);
    CHECK(swapped.gap_lo == -x.gap_lo);

    CHECK_FALSE(detect_crossover({{1, 5}, {2, 5}, {3, 4}}, {{1, 4}, {2, 4}, {3, 4}}).height_m);
    CHECK_THROWS_AS(detect_crossover({{1, 5}, {2, 5}}, {{1, 4}, {3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(detect_crossover({{1, 5}}, {{1, 4}}), std::invalid_argument);

    // a tie sample between opposite signs is reported as the crossing
    const auto tie = detect_crossover({{1, 2}, {2, 1}, {3, 0}}, {{1, 1}, {2, 1}, {3, 1}});
    REQUIRE(tie.height_m);
    CHECK(*tie.height_m == 2.0);
}

TEST_CASE("series extraction")
{
    const auto rows = sample_rows();
    const auto s = series_of(rows, {PlacementType::C, 8}, &MetricsReport::user_coverage);
    REQUIRE(s.size() == 2);
    CHECK(s[0].first == 1.5);
    CHECK(s[1].first == 2.25);
    CHECK(s[1].second == rows[3].metrics.user_coverage);
}

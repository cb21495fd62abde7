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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thzap/format.hpp"
#include "thzap/simulation.hpp"

namespace thzap
{

// Writes to a sibling temporary and renames over `path`. Throws std::runtime_error
// naming the path on failure.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);
std::string read_file(const std::filesystem::path &path);

// Results table, one row per run:
// placement_type,N,H_m,seed,user_coverage,mean_throughput_bps,ap_idle_fraction,handoff_count
std::string results_csv(std::span<const SweepRow> rows);
std::vector<SweepRow> parse_results_csv(std::string_view text);
void write_results(std::span<const SweepRow> rows, const std::filesystem::path &path);
std::vector<SweepRow> read_results(const std::filesystem::path &path);

// Heat map as three files next to each other: <stem>.csv holds the rate grid (one line per
// y row, x increasing left to right), <stem>_regions.csv the region letters (D/I/S) in the
// same layout, and <stem>.json the metadata sidecar with `extra` merged in.
void write_heatmap(const HeatmapGrid &grid, const std::filesystem::path &stem, const nlohmann::json &extra = {});
HeatmapGrid read_heatmap(const std::filesystem::path &stem);

std::string events_csv(std::span<const Event> events);
std::string trajectory_csv(std::span<const TrajectorySample> samples);

nlohmann::json metrics_json(const MetricsReport &report);

struct CrossoverResult
{
    std::string metric;
    std::string first_label;
    std::string second_label;
    std::optional<double> height_m; // interpolated crossing, none when the order never flips
    double bracket_lo_m = 0.0;
    double bracket_hi_m = 0.0;
    double gap_lo = 0.0; // first - second at bracket_lo_m
    double gap_hi = 0.0; // first - second at bracket_hi_m
};

using Series = std::vector<std::pair<double, double>>; // (H, metric), increasing H

/// First height interval where the sign of (first - second) changes, linearly interpolated.
/// Samples where the two series tie are skipped when locating the sign change.
CrossoverResult detect_crossover(const Series &first, const Series &second, std::string metric = {},
                                 std::string first_label = {}, std::string second_label = {});

// Pulls one metric for one scenario out of a sweep table, ordered by H.
Series series_of(std::span<const SweepRow> rows, const Scenario &scenario, double MetricsReport::*metric);

} // namespace thzap

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

#include "thzap/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace thzap
{

namespace
{

const char *const results_header =
    "placement_type,N,H_m,seed,user_coverage,mean_throughput_bps,ap_idle_fraction,handoff_count";

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::vector<std::string_view> lines_of(std::string_view text)
{
    std::vector<std::string_view> out;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        out.push_back(line);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    }
    return out;
}

std::filesystem::path with_suffix(const std::filesystem::path &stem, const char *suffix)
{
    std::filesystem::path p = stem;
    p += suffix;
    return p;
}

} // namespace

void write_file_atomic(const std::filesystem::path &path, std::string_view content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place: " + path.string());
    }
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------- results table ----------

std::string results_csv(std::span<const SweepRow> rows)
{
    std::string out = results_header;
    out += '\n';
    for (const SweepRow &r : rows)
    {
        out += to_char(r.scenario.type);
        out += ',' + std::to_string(r.scenario.n_aps);
        out += ',' + format_number(r.effective_height_m);
        out += ',' + std::to_string(r.seed);
        out += ',' + format_number(r.metrics.user_coverage);
        out += ',' + format_number(r.metrics.mean_throughput_bps);
        out += ',' + format_number(r.metrics.ap_idle_fraction);
        out += ',' + std::to_string(r.metrics.handoff_count);
        out += '\n';
    }
    return out;
}

std::vector<SweepRow> parse_results_csv(std::string_view text)
{
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != results_header)
        throw std::invalid_argument("results table: missing or unexpected header");
    std::vector<SweepRow> rows;
    for (std::size_t k = 1; k < lines.size(); ++k)
    {
        if (lines[k].empty())
            continue;
        const auto cols = split(lines[k], ',');
        if (cols.size() != 8 || cols[0].size() != 1)
            throw std::invalid_argument("results table line " + std::to_string(k + 1) + ": expected 8 columns");
        SweepRow r;
        r.scenario.type = placement_from_char(cols[0].front());
        r.scenario.n_aps = static_cast<int>(parse_number(cols[1]));
        r.effective_height_m = parse_number(cols[2]);
        r.seed = std::stoull(std::string(cols[3]));
        r.metrics.user_coverage = parse_number(cols[4]);
        r.metrics.mean_throughput_bps = parse_number(cols[5]);
        r.metrics.ap_idle_fraction = parse_number(cols[6]);
        r.metrics.handoff_count = std::stoll(std::string(cols[7]));
        rows.push_back(r);
    }
    return rows;
}

void write_results(std::span<const SweepRow> rows, const std::filesystem::path &path)
{
    write_file_atomic(path, results_csv(rows));
}

std::vector<SweepRow> read_results(const std::filesystem::path &path) { return parse_results_csv(read_file(path)); }

// ---------- heat map ----------

void write_heatmap(const HeatmapGrid &grid, const std::filesystem::path &stem, const nlohmann::json &extra)
{
    std::string rates;
    std::string regions;
    for (Eigen::Index iy = 0; iy < grid.rate_bps.cols(); ++iy)
    {
        for (Eigen::Index ix = 0; ix < grid.rate_bps.rows(); ++ix)
        {
            if (ix > 0)
            {
                rates += ',';
                regions += ',';
            }
            rates += format_number(grid.rate_bps(ix, iy));
            regions += to_char(grid.label(ix, iy));
        }
        rates += '\n';
        regions += '\n';
    }

    nlohmann::json meta = {
        {"resolution_per_m", grid.resolution_per_m},
        {"length_m", grid.length_m},
        {"width_m", grid.width_m},
        {"nx", grid.rate_bps.rows()},
        {"ny", grid.rate_bps.cols()},
        {"device_height_m", grid.device_height_m},
        {"probe_bps", grid.probe_bps},
        {"layout", "one line per y cell (increasing y), columns are x cells (increasing x); "
                   "cell centres at ((ix + 0.5) / resolution, (iy + 0.5) / resolution)"},
        {"legend", {{"D", "Darkness"}, {"I", "Illumination"}, {"S", "Shadow"}}},
        {"rate_file", with_suffix(stem, ".csv").filename().string()},
        {"region_file", with_suffix(stem, "_regions.csv").filename().string()},
    };
    if (extra.is_object())
        meta.update(extra);

    write_file_atomic(with_suffix(stem, ".csv"), rates);
    write_file_atomic(with_suffix(stem, "_regions.csv"), regions);
    write_file_atomic(with_suffix(stem, ".json"), meta.dump(2) + "\n");
}

HeatmapGrid read_heatmap(const std::filesystem::path &stem)
{
    const nlohmann::json meta = nlohmann::json::parse(read_file(with_suffix(stem, ".json")));
    HeatmapGrid g;
    g.resolution_per_m = meta.at("resolution_per_m").get<double>();
    g.length_m = meta.at("length_m").get<double>();
    g.width_m = meta.at("width_m").get<double>();
    g.device_height_m = meta.at("device_height_m").get<double>();
    g.probe_bps = meta.at("probe_bps").get<double>();
    const auto nx = meta.at("nx").get<Eigen::Index>();
    const auto ny = meta.at("ny").get<Eigen::Index>();
    g.rate_bps.resize(nx, ny);
    g.region.resize(nx, ny);

    const std::string rates = read_file(with_suffix(stem, ".csv"));
    const std::string regions = read_file(with_suffix(stem, "_regions.csv"));
    const auto rate_lines = lines_of(rates);
    const auto region_lines = lines_of(regions);
    if (static_cast<Eigen::Index>(rate_lines.size()) != ny || static_cast<Eigen::Index>(region_lines.size()) != ny)
        throw std::invalid_argument("heat map: row count does not match metadata");
    for (Eigen::Index iy = 0; iy < ny; ++iy)
    {
        const auto rc = split(rate_lines[static_cast<std::size_t>(iy)], ',');
        const auto lc = split(region_lines[static_cast<std::size_t>(iy)], ',');
        if (static_cast<Eigen::Index>(rc.size()) != nx || static_cast<Eigen::Index>(lc.size()) != nx)
            throw std::invalid_argument("heat map: column count does not match metadata");
        for (Eigen::Index ix = 0; ix < nx; ++ix)
        {
            g.rate_bps(ix, iy) = parse_number(rc[static_cast<std::size_t>(ix)]);
            const std::string_view l = lc[static_cast<std::size_t>(ix)];
            if (l == "D")
                g.region(ix, iy) = static_cast<std::uint8_t>(Region::Darkness);
            else if (l == "I")
                g.region(ix, iy) = static_cast<std::uint8_t>(Region::Illumination);
            else if (l == "S")
                g.region(ix, iy) = static_cast<std::uint8_t>(Region::Shadow);
            else
                throw std::invalid_argument("heat map: unknown region label '" + std::string(l) + "'");
        }
    }
    return g;
}

// ---------- event log, trajectories, summaries ----------

std::string events_csv(std::span<const Event> events)
{
    std::string out = "t_s,event,user,ap\n";
    for (const Event &e : events)
        out += format_number(e.t_s) + ',' + to_string(e.kind) + ',' + std::to_string(e.user) + ',' +
               std::to_string(e.ap) + '\n';
    return out;
}

std::string trajectory_csv(std::span<const TrajectorySample> samples)
{
    std::string out = "t_s,user,x_m,y_m\n";
    for (const TrajectorySample &s : samples)
        out += format_number(s.t_s) + ',' + std::to_string(s.user) + ',' + format_number(s.x_m) + ',' +
               format_number(s.y_m) + '\n';
    return out;
}

nlohmann::json metrics_json(const MetricsReport &r)
{
    auto vec = [](const Eigen::VectorXd &v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    return {
        {"user_coverage", r.user_coverage},
        {"mean_throughput_bps", r.mean_throughput_bps},
        {"ap_idle_fraction", r.ap_idle_fraction},
        {"handoff_count", r.handoff_count},
        {"alignment_events", r.alignment_events},
        {"alignment_overhead_s", r.alignment_overhead_s},
        {"blockage_events", r.blockage_events},
        {"steps", r.steps},
        {"per_ap_power_w", r.per_ap_power_w},
        {"effective_height_m", r.effective_height_m},
        {"height_correction_m", r.height_correction_m},
        {"per_ap_idle_fraction", vec(r.ap_idle)},
        {"per_user_coverage", vec(r.user_coverage_each)},
        {"per_user_throughput_bps", vec(r.user_throughput_each)},
    };
}

// ---------- crossover ----------

CrossoverResult detect_crossover(const Series &first, const Series &second, std::string metric, std::string first_label,
                                 std::string second_label)
{
    if (first.size() != second.size() || first.size() < 2)
        throw std::invalid_argument("detect_crossover: series need the same grid with at least two points");
    for (std::size_t k = 0; k < first.size(); ++k)
    {
        if (first[k].first != second[k].first)
            throw std::invalid_argument("detect_crossover: mismatched height grids");
        if (k > 0 && !(first[k].first > first[k - 1].first))
            throw std::invalid_argument("detect_crossover: heights must increase");
    }

    CrossoverResult out;
    out.metric = std::move(metric);
    out.first_label = std::move(first_label);
    out.second_label = std::move(second_label);
    auto gap = [&](std::size_t k) { return first[k].second - second[k].second; };
    auto sign = [](double v) { return (v > 0) - (v < 0); };

    std::optional<std::size_t> last;
    for (std::size_t k = 0; k < first.size(); ++k)
    {
        const int s = sign(gap(k));
        if (s == 0)
            continue;
        if (last && s != sign(gap(*last)))
        {
            const std::size_t j = *last;
            out.bracket_lo_m = first[j].first;
            out.bracket_hi_m = first[k].first;
            out.gap_lo = gap(j);
            out.gap_hi = gap(k);
            if (k == j + 1)
                out.height_m = out.bracket_lo_m + (out.bracket_hi_m - out.bracket_lo_m) * out.gap_lo / (out.gap_lo - out.gap_hi);
            else
                out.height_m = first[j + 1].first; // tie samples between: report the first tie
            return out;
        }
        last = k;
    }
    return out;
}

Series series_of(std::span<const SweepRow> rows, const Scenario &scenario, double MetricsReport::*metric)
{
    Series s;
    for (const SweepRow &r : rows)
        if (r.scenario.type == scenario.type && r.scenario.n_aps == scenario.n_aps)
            s.emplace_back(r.effective_height_m, r.metrics.*metric);
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace thzap

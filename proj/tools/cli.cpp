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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "thzap/config.hpp"
#include "thzap/format.hpp"
#include "thzap/reporting.hpp"

namespace thzap::cli
{

namespace
{

namespace fs = std::filesystem;

struct Options
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    int jobs = 1;
    std::string blockage;
    double resolution = 10.0;

    // radius / coverage-sweep
    double spectral_efficiency = 0.1;
    bool ceil = false;
    std::vector<double> freqs_ghz{570.0};
    std::vector<double> beamwidths_deg{5.0, 10.0, 15.0, 20.0, 25.0, 30.0};

    // heatmap / sweep
    std::string type;
    std::optional<double> probe_gbps;
    std::string axis = "H";
    std::string values;
    std::string types;

    // simulate
    bool events = false;
    bool trajectory = false;
};

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
    {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b != std::string::npos)
            out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

ExperimentConfig load_experiment(const Options &o)
{
    ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
    if (o.seed)
        c.seed = *o.seed;
    if (o.blockage == "on")
        c.blockage = true;
    else if (o.blockage == "off")
        c.blockage = false;
    else if (!o.blockage.empty())
        throw ConfigError("blockage", "expected on or off");
    if (!o.type.empty())
    {
        Scenario s;
        try
        {
            s = Scenario::parse(o.type);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError("type", e.what());
        }
        c.placement_type = std::string(1, to_char(s.type));
        if (s.type != PlacementType::A)
            c.n_aps = s.n_aps;
    }
    return c;
}

fs::path output_dir(const Options &o)
{
    const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir.string());
    return dir;
}

void write_manifest(const fs::path &dir, const RunManifest &m)
{
    write_file_atomic(dir / "manifest.ini", m.config_text);
}

std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

int cmd_validate(const Options &o, std::ostream &out)
{
    const ExperimentConfig c = load_experiment(o);
    to_sim_config(c);
    const RunManifest m = RunManifest::from(c);
    out << "# config ok, hash " << m.config_hash << "\n" << m.config_text;
    return exit_ok;
}

int cmd_radius(const Options &o, std::ostream &out)
{
    const SimConfig sim = to_sim_config(load_experiment(o));
    if (!(o.spectral_efficiency > 0))
        throw ConfigError("spectral-efficiency", "must be positive");
    const auto link = sim.per_ap_link();
    if (o.ceil)
        out << format_number(coverage_radius_ceiled(link, o.spectral_efficiency)) << "\n";
    else
        out << fixed6(coverage_radius(link, o.spectral_efficiency)) << "\n";
    return exit_ok;
}

int cmd_coverage_sweep(const Options &o, std::ostream &out)
{
    const SimConfig sim = to_sim_config(load_experiment(o));
    if (o.freqs_ghz.empty() || o.beamwidths_deg.empty())
        throw ConfigError("axes", "frequency and beamwidth lists must be non-empty");
    if (!(o.spectral_efficiency > 0))
        throw ConfigError("spectral-efficiency", "must be positive");

    std::string table = "frequency_ghz,beamwidth_deg,spectral_efficiency,tau_per_m,radius_m\n";
    for (double f : o.freqs_ghz)
    {
        for (double bw : o.beamwidths_deg)
        {
            auto link = sim.per_ap_link();
            link.carrier_hz = f * 1e9;
            link.tx_beamwidth_deg = bw;
            link.rx_beamwidth_deg = bw;
            double tau = 0.0;
            double r = 0.0;
            try
            {
                link.validate();
                tau = absorption_coefficient(link);
                r = coverage_radius(link, o.spectral_efficiency);
            }
            catch (const std::exception &e)
            {
                throw ConfigError("axes", "f=" + format_number(f) + " GHz, beamwidth=" + format_number(bw) + ": " + e.what());
            }
            table += format_number(f) + ',' + format_number(bw) + ',' + format_number(o.spectral_efficiency) + ',' +
                     format_number(tau) + ',' + format_number(r) + '\n';
        }
    }
    if (o.out_dir.empty())
    {
        out << table;
    }
    else
    {
        const fs::path path = output_dir(o) / "coverage_sweep.csv";
        write_file_atomic(path, table);
        out << "wrote " << path.string() << "\n";
    }
    return exit_ok;
}

int cmd_heatmap(const Options &o, std::ostream &out)
{
    const ExperimentConfig c = load_experiment(o);
    const SimConfig sim = to_sim_config(c);
    if (!(o.resolution > 0))
        throw ConfigError("resolution", "must be positive");
    const double probe = o.probe_gbps ? *o.probe_gbps * 1e9 : sim.mobility.rate_min_bps;
    if (probe < 0)
        throw ConfigError("probe-gbps", "must be non-negative");

    // With blockage on, the seeded initial user population stands in the room as blockers.
    std::vector<BodyCylinder> blockers;
    if (sim.blockage_enabled)
        for (const UserState &u : init_users(sim.effective_room(), sim.n_users, sim.seed, sim.mobility))
            blockers.push_back(u.body);

    const HeatmapGrid grid = heatmap(sim, o.resolution, probe, blockers);
    const fs::path dir = output_dir(o);
    const RunManifest m = RunManifest::from(c);
    write_heatmap(grid, dir / "heatmap", {{"manifest", m.to_json()}, {"n_blockers", blockers.size()}});
    write_manifest(dir, m);
    out << "wrote " << (dir / "heatmap.csv").string() << "\n";
    return exit_ok;
}

int cmd_simulate(const Options &o, std::ostream &out)
{
    const ExperimentConfig c = load_experiment(o);
    const SimConfig sim = to_sim_config(c);
    RunTrace trace;
    trace.record_events = o.events;
    trace.record_trajectory = o.trajectory;
    SweepRow row;
    row.scenario = Scenario{sim.placement, sim.ap_count()};
    row.effective_height_m = sim.effective_height();
    row.seed = sim.seed;
    row.metrics = run(sim, &trace);

    const fs::path dir = output_dir(o);
    const RunManifest m = RunManifest::from(c);
    write_results(std::span<const SweepRow>(&row, 1), dir / "results.csv");
    nlohmann::json summary = {{"manifest", m.to_json()},
                              {"scenario", row.scenario.label()},
                              {"metrics", metrics_json(row.metrics)}};
    write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
    write_manifest(dir, m);
    if (o.events)
        write_file_atomic(dir / "events.csv", events_csv(trace.events));
    if (o.trajectory)
        write_file_atomic(dir / "trajectory.csv", trajectory_csv(trace.trajectory));

    out << row.scenario.label() << " H=" << format_number(row.effective_height_m)
        << " coverage=" << format_number(row.metrics.user_coverage)
        << " throughput_bps=" << format_number(row.metrics.mean_throughput_bps)
        << " idle=" << format_number(row.metrics.ap_idle_fraction) << "\n";
    return exit_ok;
}

int cmd_sweep(const Options &o, std::ostream &out)
{
    const ExperimentConfig c = load_experiment(o);
    const SimConfig base = to_sim_config(c);
    SweepAxis axis;
    try
    {
        axis = sweep_axis_from_string(o.axis);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError("axis", e.what());
    }
    if (o.values.empty())
        throw ConfigError("values", "must be given");

    std::vector<SweepRow> rows;
    if (axis == SweepAxis::Placement)
    {
        std::vector<Scenario> scenarios;
        for (const std::string &label : split_list(o.values))
            scenarios.push_back(Scenario::parse(label));
        rows = sweep(base, scenarios, o.jobs);
    }
    else
    {
        std::vector<double> values;
        try
        {
            values = parse_value_list(o.values);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError("values", e.what());
        }
        const std::vector<std::string> types = split_list(o.types);
        if (axis == SweepAxis::EffectiveHeight)
        {
            std::vector<Scenario> scenarios;
            for (const std::string &label : types)
                scenarios.push_back(Scenario::parse(label));
            if (scenarios.empty())
                scenarios.push_back(Scenario{base.placement, base.ap_count()});
            rows = sweep_grid(base, scenarios, values, o.jobs);
        }
        else
        {
            std::vector<PlacementType> kinds;
            for (const std::string &label : types)
                kinds.push_back(placement_from_char(label.front()));
            if (kinds.empty())
                kinds.push_back(base.placement);
            for (PlacementType k : kinds)
            {
                SimConfig cfg = base;
                cfg.placement = k;
                auto part = sweep(cfg, SweepAxis::ApCount, values, o.jobs);
                rows.insert(rows.end(), part.begin(), part.end());
            }
        }
    }

    const fs::path dir = output_dir(o);
    const RunManifest m = RunManifest::from(c);
    write_results(rows, dir / "sweep.csv");
    nlohmann::json meta = {{"manifest", m.to_json()}, {"axis", o.axis}, {"values", o.values}, {"types", o.types},
                           {"rows", rows.size()}};
    write_file_atomic(dir / "sweep.json", meta.dump(2) + "\n");
    write_manifest(dir, m);
    out << "wrote " << rows.size() << " rows to " << (dir / "sweep.csv").string() << "\n";
    return exit_ok;
}

} // namespace

std::vector<double> parse_value_list(const std::string &spec)
{
    std::vector<double> out;
    if (spec.find(':') != std::string::npos)
    {
        std::vector<double> parts;
        std::stringstream ss(spec);
        for (std::string item; std::getline(ss, item, ':');)
            parts.push_back(parse_number(item));
        if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
            throw std::invalid_argument("range must be start:stop:step with step > 0 and stop >= start");
        const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
        for (long k = 0; k < count; ++k)
            out.push_back(parts[0] + static_cast<double>(k) * parts[2]);
        return out;
    }
    for (const std::string &item : split_list(spec))
        out.push_back(parse_number(item));
    if (out.empty())
        throw std::invalid_argument("empty value list");
    return out;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Indoor THz access-point placement simulator", "thzap"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--config", o.config_path, "Experiment config file (key = value with sections)");
    app.add_option("--seed", o.seed, "Override the config seed");
    app.add_option("--out", o.out_dir, "Output directory");
    app.add_option("--jobs", o.jobs, "Parallel runs for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--blockage", o.blockage, "Mobile human blockage: on|off")->check(CLI::IsMember({"on", "off"}));
    app.add_option("--resolution", o.resolution, "Heat map cells per meter");

    auto *validate = app.add_subcommand("validate", "Check a config and print it with all defaults expanded");
    auto *radius = app.add_subcommand("radius", "Illumination radius of one AP");
    radius->add_option("-S,--spectral-efficiency", o.spectral_efficiency, "Required bit/s/Hz");
    radius->add_flag("--ceil", o.ceil, "Round the radius up to whole meters");
    auto *coverage = app.add_subcommand("coverage-sweep", "Radius over carrier frequency x beamwidth");
    coverage->add_option("-S,--spectral-efficiency", o.spectral_efficiency, "Required bit/s/Hz");
    coverage->add_option("--freqs-ghz", o.freqs_ghz, "Carrier frequencies")->delimiter(',');
    coverage->add_option("--beamwidths-deg", o.beamwidths_deg, "Antenna beamwidths")->delimiter(',');
    auto *heat = app.add_subcommand("heatmap", "Peak-rate heat map with Darkness/Illumination/Shadow labels");
    heat->add_option("--type", o.type, "Placement scenario, e.g. A, B4, C16");
    heat->add_option("--probe-gbps", o.probe_gbps, "Minimum rate separating Illumination from Darkness");
    auto *simulate = app.add_subcommand("simulate", "One mobility run; writes results.csv and summary.json");
    simulate->add_option("--type", o.type, "Placement scenario, e.g. A, B4, C16");
    simulate->add_flag("--events", o.events, "Also write events.csv");
    simulate->add_flag("--trajectory", o.trajectory, "Also write trajectory.csv");
    auto *sweep_cmd = app.add_subcommand("sweep", "Runs over effective height, AP count or placement");
    sweep_cmd->add_option("--axis", o.axis, "H, N or type");
    sweep_cmd->add_option("--values", o.values, "start:stop:step, a comma list, or scenario labels for --axis type");
    sweep_cmd->add_option("--types", o.types, "Scenarios for H sweeps (B4,C4) or types for N sweeps (B,C)");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &e)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::CallForAllHelp &e)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    }

    try
    {
        if (*validate)
            return cmd_validate(o, out);
        if (*radius)
            return cmd_radius(o, out);
        if (*coverage)
            return cmd_coverage_sweep(o, out);
        if (*heat)
            return cmd_heatmap(o, out);
        if (*simulate)
            return cmd_simulate(o, out);
        if (*sweep_cmd)
            return cmd_sweep(o, out);
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::invalid_argument &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::domain_error &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_runtime_error;
    }
    return exit_config_error;
}

} // namespace thzap::cli
